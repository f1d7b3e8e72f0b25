#include "rydfibre/atom_state.hpp"

#include <cmath>
#include <cstdlib>

#include "rydfibre/error.hpp"

namespace rydfibre {

bool AtomState::valid() const noexcept {
    if (n < 1 || l < 0 || l >= n) return false;
    if (two_j != 2 * l + 1 && two_j != 2 * l - 1) return false;
    if (two_j < 1) return false;
    if (std::abs(two_m) > two_j || (two_m + two_j) % 2 != 0) return false;
    return true;
}

void AtomState::validate() const {
    if (!valid()) throw InvalidStateError("invalid atomic state " + label());
}

std::string AtomState::label() const {
    static const char* letters = "SPDFGHIKLMNOQRTUV";
    std::string s = std::to_string(n);
    s += (l >= 0 && l < 17) ? std::string(1, letters[l]) : "[L=" + std::to_string(l) + "]";
    s += std::to_string(two_j) + "/2,mj=";
    s += std::to_string(two_m) + "/2";
    return s;
}

AtomState make_state(int n, int l, double j, double mj) {
    AtomState s{n, l, static_cast<int>(std::lround(2.0 * j)), static_cast<int>(std::lround(2.0 * mj))};
    s.validate();
    return s;
}

}  // namespace rydfibre
