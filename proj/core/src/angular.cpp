#include "rydfibre/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace rydfibre::angular {
namespace {

constexpr int kMaxFactorial = 300;

const std::array<double, kMaxFactorial + 1>& log_factorials() {
    static const auto table = [] {
        std::array<double, kMaxFactorial + 1> t{};
        t[0] = 0.0;
        for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    return table;
}

double lf(int n) { return log_factorials().at(static_cast<std::size_t>(n)); }

bool is_even(int x) { return (x % 2) == 0; }

// log of the triangle coefficient Delta(a b c), arguments doubled.
bool triangle(int ta, int tb, int tc) {
    if (ta < 0 || tb < 0 || tc < 0) return false;
    if (!is_even(ta + tb + tc)) return false;
    return tc <= ta + tb && tc >= std::abs(ta - tb);
}

double log_delta(int ta, int tb, int tc) {
    return 0.5 * (lf((ta + tb - tc) / 2) + lf((ta - tb + tc) / 2) + lf((-ta + tb + tc) / 2) -
                  lf((ta + tb + tc) / 2 + 1));
}

double phase(int exponent) { return is_even(exponent) ? 1.0 : -1.0; }

}  // namespace

double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (!triangle(tj1, tj2, tj3)) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    if (!is_even(tj1 + tm1) || !is_even(tj2 + tm2) || !is_even(tj3 + tm3)) return 0.0;

    // Racah: sum over t of (-1)^t / [t! (j3-j2+t+m1)! (j3-j1+t-m2)! (j1+j2-j3-t)! (j1-t-m1)! (j2-t+m2)!]
    const int a1 = (tj3 - tj2 + tm1) / 2;
    const int a2 = (tj3 - tj1 - tm2) / 2;
    const int b1 = (tj1 + tj2 - tj3) / 2;
    const int b2 = (tj1 - tm1) / 2;
    const int b3 = (tj2 + tm2) / 2;
    const int tmin = std::max({0, -a1, -a2});
    const int tmax = std::min({b1, b2, b3});
    if (tmin > tmax) return 0.0;

    const double pref = log_delta(tj1, tj2, tj3) +
                        0.5 * (lf((tj1 + tm1) / 2) + lf((tj1 - tm1) / 2) + lf((tj2 + tm2) / 2) +
                               lf((tj2 - tm2) / 2) + lf((tj3 + tm3) / 2) + lf((tj3 - tm3) / 2));
    double sum = 0.0;
    for (int t = tmin; t <= tmax; ++t) {
        const double lt = lf(t) + lf(a1 + t) + lf(a2 + t) + lf(b1 - t) + lf(b2 - t) + lf(b3 - t);
        sum += phase(t) * std::exp(pref - lt);
    }
    return phase((tj1 - tj2 - tm3) / 2) * sum;
}

double wigner_6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    if (!triangle(tj1, tj2, tj3) || !triangle(tj1, tj5, tj6) || !triangle(tj4, tj2, tj6) ||
        !triangle(tj4, tj5, tj3))
        return 0.0;

    const int a1 = (tj1 + tj2 + tj3) / 2;
    const int a2 = (tj1 + tj5 + tj6) / 2;
    const int a3 = (tj4 + tj2 + tj6) / 2;
    const int a4 = (tj4 + tj5 + tj3) / 2;
    const int b1 = (tj1 + tj2 + tj4 + tj5) / 2;
    const int b2 = (tj2 + tj3 + tj5 + tj6) / 2;
    const int b3 = (tj3 + tj1 + tj6 + tj4) / 2;
    const int tmin = std::max({a1, a2, a3, a4});
    const int tmax = std::min({b1, b2, b3});
    if (tmin > tmax) return 0.0;

    const double pref = log_delta(tj1, tj2, tj3) + log_delta(tj1, tj5, tj6) +
                        log_delta(tj4, tj2, tj6) + log_delta(tj4, tj5, tj3);
    double sum = 0.0;
    for (int t = tmin; t <= tmax; ++t) {
        const double lt = lf(t + 1) - (lf(t - a1) + lf(t - a2) + lf(t - a3) + lf(t - a4) +
                                        lf(b1 - t) + lf(b2 - t) + lf(b3 - t));
        sum += phase(t) * std::exp(pref + lt);
    }
    return sum;
}

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    return phase((tj1 - tj2 + tM) / 2) * std::sqrt(tJ + 1.0) *
           wigner_3j(tj1, tj2, tJ, tm1, tm2, -tM);
}

double reduced_ck_orbital(int lp, int k, int l) {
    return phase(lp) * std::sqrt((2.0 * lp + 1.0) * (2.0 * l + 1.0)) *
           wigner_3j(2 * lp, 2 * k, 2 * l, 0, 0, 0);
}

double reduced_ck_fine(int lp, int tjp, int k, int l, int tj) {
    // <l' s j'||C^k||l s j> = (-1)^{l'+s+j+k} sqrt((2j+1)(2j'+1)) {l' j' s; j l k} <l'||C^k||l>
    const int two_s = 1;
    const int two_exp = 2 * lp + two_s + tj + 2 * k;
    return phase(two_exp / 2) * std::sqrt((tj + 1.0) * (tjp + 1.0)) *
           wigner_6j(2 * lp, tjp, two_s, tj, 2 * l, 2 * k) * reduced_ck_orbital(lp, k, l);
}

double ck_matrix_element(int lp, int tjp, int tmp, int k, int q, int l, int tj, int tm) {
    // <j' m'|T^k_q|j m> = (-1)^{j'-m'} (j' k j; -m' q m) <j'||T^k||j>
    const double three_j = wigner_3j(tjp, 2 * k, tj, -tmp, 2 * q, tm);
    if (three_j == 0.0) return 0.0;
    return phase((tjp - tmp) / 2) * three_j * reduced_ck_fine(lp, tjp, k, l, tj);
}

}  // namespace rydfibre::angular
