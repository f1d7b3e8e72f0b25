#pragma once

#include <compare>
#include <string>

namespace rydfibre {

/// Single-atom level |n L J M_J>. J and M_J are stored doubled.
struct AtomState {
    int n = 0;
    int l = 0;
    int two_j = 1;
    int two_m = 1;

    double j() const { return 0.5 * two_j; }
    double m() const { return 0.5 * two_m; }

    /// Throws InvalidStateError when the quantum numbers are inconsistent.
    void validate() const;
    bool valid() const noexcept;

    /// Spectroscopic label such as "30P3/2,mj=3/2".
    std::string label() const;

    auto operator<=>(const AtomState&) const = default;
};

/// Convenience constructor taking J and M_J as reals (e.g. 1.5, -0.5).
AtomState make_state(int n, int l, double j, double mj);

}  // namespace rydfibre
