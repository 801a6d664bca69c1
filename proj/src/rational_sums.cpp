#include "weylab/rational_sums.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "weylab/primes.hpp"
#include "weylab/util.hpp"

namespace weylab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PrimePoint::PrimePoint(long long prime, std::vector<long long> residues)
    : p(prime), u(std::move(residues)) {
    if (!is_prime_u64(static_cast<unsigned long long>(p)))
        throw std::invalid_argument("PrimePoint: modulus is not prime");
    if (u.empty()) throw std::invalid_argument("PrimePoint: dimension must be >= 1");
    for (auto& r : u) {
        r %= p;
        if (r < 0) r += p;
    }
}

std::vector<cplx> unity_table(long long p) {
    std::vector<cplx> t(static_cast<size_t>(p));
    for (long long k = 0; k < p; ++k) {
        double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(p);
        t[static_cast<size_t>(k)] = cplx(std::cos(ang), std::sin(ang));
    }
    return t;
}

cplx rational_complete_sum(const PrimePoint& pt, const std::vector<cplx>& table) {
    const long long p = pt.p;
    cplx acc(0.0, 0.0);
    for (long long n = 1; n <= p; ++n) {
        // Horner evaluation of u_d n^{d-1} + ... + u_1, times n, mod p.
        unsigned long long v = 0;
        for (size_t j = pt.u.size(); j-- > 0;) {
            v = mulmod_u64(v, static_cast<unsigned long long>(n),
                           static_cast<unsigned long long>(p));
            v = (v + static_cast<unsigned long long>(pt.u[j])) %
                static_cast<unsigned long long>(p);
        }
        v = mulmod_u64(v, static_cast<unsigned long long>(n),
                       static_cast<unsigned long long>(p));
        acc += table[static_cast<size_t>(v)];
    }
    return acc;
}

cplx rational_complete_sum(const PrimePoint& pt) {
    return rational_complete_sum(pt, unity_table(pt.p));
}

bool in_Z_d(const std::vector<long long>& u) {
    for (size_t j = 1; j < u.size(); ++j)
        if (u[j] != 0) return true;
    return false;
}

namespace {

// Prefix sums P_0..P_p of e_p(u_1 n + ... + u_d n^d).
std::vector<cplx> prefix_sums(const std::vector<long long>& u, long long p,
                              const std::vector<cplx>& table) {
    std::vector<cplx> P(static_cast<size_t>(p) + 1);
    P[0] = cplx(0.0, 0.0);
    for (long long n = 1; n <= p; ++n) {
        unsigned long long v = 0;
        for (size_t j = u.size(); j-- > 0;) {
            v = mulmod_u64(v, static_cast<unsigned long long>(n),
                           static_cast<unsigned long long>(p));
            v = (v + static_cast<unsigned long long>(u[j])) %
                static_cast<unsigned long long>(p);
        }
        v = mulmod_u64(v, static_cast<unsigned long long>(n),
                       static_cast<unsigned long long>(p));
        P[static_cast<size_t>(n)] = P[static_cast<size_t>(n - 1)] + table[static_cast<size_t>(v)];
    }
    return P;
}

double max_abs_prefix(const std::vector<cplx>& P) {
    double best = 0.0;
    for (const auto& z : P) best = std::max(best, std::norm(z));
    return std::sqrt(best);
}

// Diameter of the prefix-sum point set = largest |sum over a window|.
double max_abs_window(const std::vector<cplx>& P) {
    double best = 0.0;
    for (size_t i = 0; i < P.size(); ++i)
        for (size_t j = i + 1; j < P.size(); ++j) best = std::max(best, std::norm(P[j] - P[i]));
    return std::sqrt(best);
}

}  // namespace

IncompleteScanReport incomplete_ratio_scan(long long d, long long p, long long samples,
                                           unsigned long long seed) {
    if (!is_prime_u64(static_cast<unsigned long long>(p)) || p < 3)
        throw std::invalid_argument("incomplete_ratio_scan: p must be an odd prime");
    if (d < 2) throw std::invalid_argument("incomplete_ratio_scan: d must be >= 2");
    IncompleteScanReport rep;
    rep.p = p;
    rep.d = d;
    const auto table = unity_table(p);
    const double sqp = std::sqrt(static_cast<double>(p));
    const double logp = std::log(static_cast<double>(p));

    // per-chunk partial reports merged in chunk order: the outcome does not
    // depend on the worker count
    const int n_chunks = 64;
    std::vector<IncompleteScanReport> partial(static_cast<size_t>(n_chunks));
    auto consider = [&](IncompleteScanReport& local, const std::vector<long long>& u,
                        bool windows) {
        auto P = prefix_sums(u, p, table);
        double pref = max_abs_prefix(P) / (sqp * logp);
        if (pref > local.max_prefix_ratio) {
            local.max_prefix_ratio = pref;
            local.argmax_u = u;
        }
        if (windows) {
            double win = max_abs_window(P) / sqp;
            if (win > local.max_window_ratio) {
                local.max_window_ratio = win;
                local.argmax_window_u = u;
            }
        }
        ++local.samples;
    };
    auto merge = [&] {
        for (const auto& loc : partial) {
            rep.samples += loc.samples;
            if (loc.max_prefix_ratio > rep.max_prefix_ratio) {
                rep.max_prefix_ratio = loc.max_prefix_ratio;
                rep.argmax_u = loc.argmax_u;
            }
            if (loc.max_window_ratio > rep.max_window_ratio) {
                rep.max_window_ratio = loc.max_window_ratio;
                rep.argmax_window_u = loc.argmax_window_u;
            }
        }
    };

    if (d == 2) {
        rep.exhaustive = true;
        parallel_chunks(n_chunks, [&](int chunk) {
            auto& local = partial[static_cast<size_t>(chunk)];
            std::vector<long long> u(2);
            long long lo = 1 + (p - 1) * chunk / n_chunks;
            long long hi = 1 + (p - 1) * (chunk + 1) / n_chunks;
            for (long long b = lo; b < hi; ++b) {
                u[1] = b;
                for (long long a = 0; a < p; ++a) {
                    u[0] = a;
                    consider(local, u, true);
                }
            }
        });
        merge();
        return rep;
    }

    double grid = std::pow(static_cast<double>(p), static_cast<double>(d));
    if (samples <= 0) {
        if (grid > 4e6)
            throw std::invalid_argument(
                "incomplete_ratio_scan: full grid too large, pass a sample count");
        rep.exhaustive = true;
        parallel_chunks(n_chunks, [&](int chunk) {
            auto& local = partial[static_cast<size_t>(chunk)];
            std::vector<long long> u(static_cast<size_t>(d));
            long long lo = p * chunk / n_chunks, hi = p * (chunk + 1) / n_chunks;
            for (long long lead = lo; lead < hi; ++lead) {
                u[0] = lead;
                std::vector<long long> rest(static_cast<size_t>(d - 1), 0);
                while (true) {
                    for (size_t j = 0; j < rest.size(); ++j) u[j + 1] = rest[j];
                    if (in_Z_d(u)) consider(local, u, false);
                    size_t j = 0;
                    while (j < rest.size() && ++rest[j] == p) rest[j++] = 0;
                    if (j == rest.size()) break;
                }
            }
        });
        merge();
        return rep;
    }

    parallel_chunks(n_chunks, [&](int chunk) {
        auto& local = partial[static_cast<size_t>(chunk)];
        std::mt19937_64 rng(seed + 0xd1ff00ULL * static_cast<unsigned long long>(chunk));
        std::uniform_int_distribution<long long> pick(0, p - 1);
        std::vector<long long> u(static_cast<size_t>(d));
        long long lo = samples * chunk / n_chunks, hi = samples * (chunk + 1) / n_chunks;
        for (long long i = lo; i < hi; ++i) {
            do {
                for (auto& c : u) c = pick(rng);
            } while (!in_Z_d(u));
            consider(local, u, false);
        }
    });
    merge();
    return rep;
}

}  // namespace weylab
