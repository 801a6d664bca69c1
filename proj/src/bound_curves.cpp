#include "weylab/bound_curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weylab/exponent.hpp"

namespace weylab {

namespace {

struct Line {
    Rational m, b;
    Rational at(const Rational& t) const { return m * t + b; }
};

using PL = std::vector<CurveSegment>;

PL from_line(const Line& ln, const Rational& lo, const Rational& hi) {
    return {CurveSegment{lo, hi, ln.m, ln.b}};
}

Rational pl_at(const PL& c, const Rational& t) {
    for (const auto& s : c)
        if (t >= s.tau_lo && t <= s.tau_hi) return s.kappa_at(t);
    throw std::domain_error("piecewise curve: tau outside domain");
}

// Merge adjacent segments that continue the same line.
void merge_pl(PL& c) {
    PL out;
    for (const auto& s : c) {
        if (!out.empty() && out.back().slope == s.slope && out.back().intercept == s.intercept &&
            out.back().tau_hi == s.tau_lo) {
            out.back().tau_hi = s.tau_hi;
        } else {
            out.push_back(s);
        }
    }
    c = std::move(out);
}

// Pointwise min or max of curves all defined on [lo, hi]. Works segment-wise:
// candidate breakpoints are the curves' own breakpoints plus every pairwise
// crossing, so the result is exact.
PL envelope(const std::vector<PL>& curves, const Rational& lo, const Rational& hi, bool take_max) {
    std::vector<Rational> cuts{lo, hi};
    for (const auto& c : curves)
        for (const auto& s : c) {
            if (s.tau_lo > lo && s.tau_lo < hi) cuts.push_back(s.tau_lo);
            if (s.tau_hi > lo && s.tau_hi < hi) cuts.push_back(s.tau_hi);
        }
    for (size_t i = 0; i < curves.size(); ++i)
        for (size_t j = i + 1; j < curves.size(); ++j)
            for (const auto& a : curves[i])
                for (const auto& b : curves[j]) {
                    if (a.slope == b.slope) continue;
                    Rational t = (b.intercept - a.intercept) / (a.slope - b.slope);
                    if (t > lo && t < hi && t >= a.tau_lo && t <= a.tau_hi && t >= b.tau_lo &&
                        t <= b.tau_hi)
                        cuts.push_back(t);
                }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    PL out;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
        size_t best = 0;
        Rational bestv = pl_at(curves[0], mid);
        for (size_t c = 1; c < curves.size(); ++c) {
            Rational v = pl_at(curves[c], mid);
            if (take_max ? (v > bestv) : (v < bestv)) { bestv = v; best = c; }
        }
        for (const auto& s : curves[best])
            if (mid >= s.tau_lo && mid <= s.tau_hi) {
                out.push_back(CurveSegment{cuts[i], cuts[i + 1], s.slope, s.intercept});
                break;
            }
    }
    merge_pl(out);
    return out;
}

PL concat(PL a, const PL& b) {
    a.insert(a.end(), b.begin(), b.end());
    merge_pl(a);
    return a;
}

BoundCurve empty_curve(std::string label, std::string note) {
    BoundCurve c;
    c.label = std::move(label);
    c.has_validity = false;
    c.note = std::move(note);
    return c;
}

BoundCurve make(std::string label, PL segs, Rational lo, Rational hi, bool unbounded = false,
                bool lower = false, bool conditional = false, std::string note = {}) {
    BoundCurve c;
    c.label = std::move(label);
    c.segments = std::move(segs);
    c.valid_lo = lo;
    c.valid_hi = hi;
    c.unbounded = unbounded;
    c.lower_bound = lower;
    c.conditional = conditional;
    c.note = std::move(note);
    return c;
}

std::string lc(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

// k-ladder tail shared by thm3.1 and thm3.5: on [k, k+1] the exponent is
// s + s(k)/2 - (d+k)/2 * tau, for k = 1 .. d-1.
PL ladder_tail(const Rational& s, long long d) {
    PL out;
    for (long long k = 1; k <= d - 1; ++k) {
        Rational lo(k), hi(k + 1);
        if (hi > Rational(d)) hi = Rational(d);
        out.push_back(CurveSegment{lo, hi, Rational(-(d + k), 2), s + Rational(s_of_d(k), 2)});
        if (hi == Rational(d)) break;
    }
    return out;
}

BoundCurve curve_trivial(const CurveParams& p, const Rational& cap) {
    // I <= delta^d * ||a||_1^{2s}
    Line ln{Rational(-p.d), p.s * Rational(2)};
    return make("trivial", from_line(ln, Rational(0), cap), Rational(0), cap, true);
}

BoundCurve curve_hoelder(const CurveParams& p, const Rational& cap) {
    if (p.s < Rational(0) || p.s > Rational(s_of_d(p.d)))
        return empty_curve("hoelder", "requires 0 <= s <= s(d)");
    Line ln{-(Rational(p.d) - Rational(2) * p.s / Rational(p.d + 1)), p.s};
    return make("hoelder", from_line(ln, Rational(0), cap), Rational(0), cap, true);
}

BoundCurve curve_wooley(const CurveParams& p, const Rational& cap) {
    // I# <= delta^d N^{s+o(1)} + N^{2s - s(d) + o(1)}, for
    // s >= d(d+1)/4 + 1 or delta >= N^{1/d - (d+1)/4}.
    Rational sd(s_of_d(p.d));
    bool s_large = p.s >= Rational(p.d * (p.d + 1), 4) + Rational(1);
    Rational hi = cap;
    bool unbounded = true;
    if (!s_large) {
        Rational tcap = Rational(p.d + 1, 4) - Rational(1, p.d);
        if (!(tcap > Rational(0)))
            return empty_curve("conj2.1", "hypothesis excludes every delta <= 1");
        hi = rat_min(cap, tcap);
        unbounded = false;
    }
    std::vector<PL> br{from_line({Rational(-p.d), p.s}, Rational(0), hi),
                       from_line({Rational(0), Rational(2) * p.s - sd}, Rational(0), hi)};
    return make("conj2.1", envelope(br, Rational(0), hi, true), Rational(0), hi, unbounded,
                false, true);
}

BoundCurve curve_dl(const CurveParams& p, const Rational& cap) {
    // I <= delta^{(d+1)/2} ||a||_2^{2s} (1 + N^{s - rho(d)/2}) N^{o(1)}
    Rational base = p.s + rat_max(Rational(0), p.s - Rational(rho(p.d), 2));
    Line ln{Rational(-(p.d + 1), 2), base};
    return make("conj2.3", from_line(ln, Rational(0), cap), Rational(0), cap, true, false, true);
}

BoundCurve curve_conj24(const CurveParams& p, const Rational&) {
    if (!p.alpha) throw std::invalid_argument("conj2.4 needs --alpha");
    Rational a = *p.alpha;
    if (a < Rational(0) || a > Rational(p.d))
        return empty_curve("conj2.4", "requires alpha in [0, d]");
    Rational sig = sigma_d_exact(p.d, a);
    Rational base = p.s + rat_max(Rational(0), p.s - sig);
    Line ln{-(Rational(p.d) - a), base};
    Rational hi(p.d);  // stated for N^{-d} <= delta <= 1
    return make("conj2.4", from_line(ln, Rational(0), hi), Rational(0), hi, false, false, true);
}

BoundCurve curve_conj25(const CurveParams& p, const Rational&) {
    if (p.s > Rational(s_of_d(p.d))) return empty_curve("conj2.5", "requires s <= s(d)");
    Rational a = alpha_0_exact(p.d, p.s);
    Line ln{-(Rational(p.d) - a), p.s};
    Rational hi(p.d);
    return make("conj2.5", from_line(ln, Rational(0), hi), Rational(0), hi, false, false, true);
}

BoundCurve curve_thm31(const CurveParams& p, const Rational&) {
    long long d = p.d;
    if (d < 2 || !(p.s > Rational(0)) || p.s > Rational(s_of_d(d), 2))
        return empty_curve("thm3.1", "requires d >= 2 and 0 < s <= s(d)/2");
    PL segs;
    segs.push_back(CurveSegment{Rational(0), Rational(1, 2 * d - 1),
                                Rational(-(2 * d - 1), 2), p.s});
    segs.push_back(CurveSegment{Rational(1, 2 * d - 1), Rational(1, d), Rational(0),
                                p.s - Rational(1, 2)});
    segs.push_back(CurveSegment{Rational(1, d), Rational(1), Rational(-d, 2), p.s});
    segs = concat(segs, ladder_tail(p.s, d));
    return make("thm3.1", segs, Rational(0), Rational(d));
}

BoundCurve curve_thm32(const CurveParams& p, const Rational&) {
    long long d = p.d;
    Rational sd(s_of_d(d));
    if (d < 2 || !p.s.is_integer() || !(p.s > sd / Rational(2)) || !(p.s < sd))
        return empty_curve("thm3.2", "requires integer s with s(d)/2 < s < s(d)");
    Rational lo(0), hi(1);  // delta >= 1/N
    std::vector<PL> outer{from_line({Rational(-(d - 1)), p.s}, lo, hi)};
    for (long long j = 1; j <= d - 1; ++j) {
        Rational etaj = eta_exact(p.s, d, j);
        Line termA{Rational(-(j - 1)), p.s - rat_min(Rational(1, 2), etaj)};
        Line termB{Rational(-(d + j - 1), 2), Rational(2) * p.s - sd / Rational(2)};
        outer.push_back(envelope({from_line(termA, lo, hi), from_line(termB, lo, hi)}, lo, hi,
                                 /*take_max=*/false));
    }
    return make("thm3.2", envelope(outer, lo, hi, true), lo, hi);
}

BoundCurve curve_cor33(const CurveParams& p, const Rational&) {
    Rational sd(s_of_d(p.d));
    if (p.d < 2 || !p.s.is_integer() || !(p.s > sd / Rational(2)) || !(p.s < sd))
        return empty_curve("cor3.3", "requires integer s with s(d)/2 < s < s(d)");
    Line ln{Rational(-p.d, 2), Rational(2) * p.s - sd / Rational(2)};
    return make("cor3.3", from_line(ln, Rational(0), Rational(1)), Rational(0), Rational(1));
}

BoundCurve curve_cor34(const CurveParams& p, const Rational&) {
    Rational sd(s_of_d(p.d));
    if (p.d < 2 || !p.s.is_integer() || !(p.s > sd / Rational(2)) || !(p.s < sd))
        return empty_curve("cor3.4", "requires integer s with s(d)/2 < s < s(d)");
    Rational hi = rat_min(Rational(1, 2 * p.d - 2), (sd - p.s) * theta(p.d));
    Line ln{Rational(-(p.d - 1)), p.s};
    return make("cor3.4", from_line(ln, Rational(0), hi), Rational(0), hi);
}

BoundCurve curve_thm35(const CurveParams& p, const Rational&) {
    long long d = p.d;
    if (d < 2) return empty_curve("thm3.5", "requires d >= 2");
    Rational sd(s_of_d(d));
    Rational s1 = sd - Rational(1);  // sharpest conjectured range
    const std::string note =
        "conditional on max_h J_{s,d}(h;N) <= N^{s-1+o(1)} for s <= s(d)-1";
    if (p.s > Rational(0) && p.s <= rat_min(sd / Rational(2), s1)) {
        PL segs;
        segs.push_back(CurveSegment{Rational(0), Rational(1, d), Rational(-d), p.s});
        segs.push_back(CurveSegment{Rational(1, d), Rational(2, d), Rational(0),
                                    p.s - Rational(1)});
        segs.push_back(CurveSegment{Rational(2, d), Rational(1), Rational(-d, 2), p.s});
        segs = concat(segs, ladder_tail(p.s, d));
        return make("thm3.5", segs, Rational(0), Rational(d), false, false, true, note);
    }
    if (p.s > sd / Rational(2) && p.s <= s1) {
        PL segs;
        for (long long k = 0; k <= d - 1; ++k) {
            Rational lo(k), hi(k + 1);
            Rational sk(k * (k + 1) / 2);
            Line term0{Rational(-d), p.s};
            Line termA{Rational(-k), p.s + sk - Rational(1)};
            Line termB{Rational(-(k + d), 2), Rational(2) * p.s - (sd - sk) / Rational(2)};
            PL inner = envelope({from_line(termA, lo, hi), from_line(termB, lo, hi)}, lo, hi,
                                false);
            PL piece = envelope({from_line(term0, lo, hi), inner}, lo, hi, true);
            segs = concat(segs, piece);
        }
        return make("thm3.5", segs, Rational(0), Rational(d), false, false, true, note);
    }
    return empty_curve("thm3.5", "requires 0 < s <= s(d) - 1");
}

BoundCurve curve_cor36(const CurveParams& p, const Rational&) {
    long long s_ll = p.s.is_integer() ? p.s.num() : -1;
    auto seg = [](long long lo_n, long long lo_d, long long hi_n, long long hi_d, long long m_n,
                  long long m_d, long long b_n, long long b_d) {
        return CurveSegment{Rational(lo_n, lo_d), Rational(hi_n, hi_d), Rational(m_n, m_d),
                            Rational(b_n, b_d)};
    };
    PL segs;
    Rational cap;
    if (s_ll == 2 && p.d == 2) {
        segs = {seg(0, 1, 1, 2, -2, 1, 2, 1), seg(1, 2, 1, 1, 0, 1, 1, 1),
                seg(1, 1, 2, 1, -1, 1, 2, 1), seg(2, 1, 3, 1, -2, 1, 4, 1)};
        cap = Rational(3);
    } else if (s_ll == 2 && p.d == 3) {
        segs = {seg(0, 1, 1, 3, -3, 1, 2, 1), seg(1, 3, 2, 3, 0, 1, 1, 1),
                seg(2, 3, 1, 1, -3, 2, 2, 1), seg(1, 1, 3, 2, -2, 1, 5, 2),
                seg(3, 2, 4, 1, -3, 1, 4, 1)};
        cap = Rational(4);
    } else if (s_ll == 3 && p.d == 3) {
        segs = {seg(0, 1, 1, 3, -3, 1, 3, 1), seg(1, 3, 2, 3, 0, 1, 2, 1),
                seg(2, 3, 1, 1, -3, 2, 3, 1), seg(1, 1, 2, 1, -2, 1, 7, 2),
                seg(2, 1, 3, 1, -5, 2, 9, 2), seg(3, 1, 4, 1, -3, 1, 6, 1)};
        cap = Rational(4);
    } else {
        return empty_curve("cor3.6", "tabulated only for (s,d) in {(2,2),(2,3),(3,3)}");
    }
    return make("cor3.6", segs, Rational(0), cap, true);
}

BoundCurve curve_thm37(const CurveParams& p, const Rational&) {
    if (p.d != 2 || !(p.s > Rational(0)))
        return empty_curve("thm3.7", "stated for d = 2 and s > 0");
    Rational denom = Rational(6) + Rational(2) * p.s;
    Rational hi = Rational(3) / denom;  // delta >= N^{-3/(6+2s)}
    Line ln{Rational(-2), Rational(2) * p.s * (Rational(1) - Rational(3) / denom)};
    return make("thm3.7", from_line(ln, Rational(0), hi), Rational(0), hi);
}

BoundCurve curve_thm38(const CurveParams& p, const Rational&) {
    if (p.d < 3) return empty_curve("thm3.8", "stated for d >= 3");
    Rational sd(s_of_d(p.d));
    Rational D(big_D(p.d));
    if (!(p.s > (sd * D - Rational(p.d * p.d + 1)) / Rational(2)))
        return empty_curve("thm3.8", "requires s > (s(d) D - d^2 - 1)/2");
    Rational denom = Rational(2) * p.s + Rational(p.d * p.d + 1);
    Rational hi = Rational(p.d + 1) / (Rational(2) * denom);
    Line ln{Rational(-p.d), Rational(2) * p.s * (Rational(1) - sd / denom)};
    return make("thm3.8", from_line(ln, Rational(0), hi), Rational(0), hi);
}

BoundCurve curve_thm39(const CurveParams& p, const Rational&, bool second_part) {
    if (p.d != 2) return empty_curve(second_part ? "thm3.9.2" : "thm3.9", "stated for d = 2");
    if (second_part) {
        // I_flat >= delta^2 N^{3(s-1)/2} for delta >= c/sqrt(N)
        Line ln{Rational(-2), Rational(3) * (p.s - Rational(1)) / Rational(2)};
        return make("thm3.9.2", from_line(ln, Rational(0), Rational(1, 2)), Rational(0),
                    Rational(1, 2), false, true);
    }
    // I_flat >= delta^2 N^{s-1} max{1, (delta N)^{s-2}} for delta >= c/N
    Rational lo(0), hi(1);
    Line base{Rational(-2), p.s - Rational(1)};
    Line boosted{-p.s, Rational(2) * p.s - Rational(3)};  // -2t + (s-1) + (s-2)(1-t)
    PL segs = envelope({from_line(base, lo, hi), from_line(boosted, lo, hi)}, lo, hi, true);
    return make("thm3.9", segs, lo, hi, false, true);
}

BoundCurve curve_thm310(const CurveParams& p, const Rational&) {
    if (p.d < 2) return empty_curve("thm3.10", "stated for d >= 2");
    long long d = p.d;
    Rational sd(s_of_d(d));
    auto branch = [&](long long k, const Rational& lo, const Rational& hi) -> PL {
        Rational nu = nu_dk(d, k);
        Line base{Rational(-d), Rational(d) + p.s - sd};
        // extra term (s-d)(1 - tau/nu), active when s > d
        Line boosted{Rational(-d) - (p.s - Rational(d)) / nu, Rational(d) + p.s - sd +
                                                                  (p.s - Rational(d))};
        return envelope({from_line(base, lo, hi), from_line(boosted, lo, hi)}, lo, hi, true);
    };
    if (p.k) {
        long long k = *p.k;
        if (k < 1 || k > d) throw std::invalid_argument("thm3.10: k must lie in [1, d]");
        Rational hi = nu_dk(d, k);
        return make("thm3.10[k=" + std::to_string(k) + "]", branch(k, Rational(0), hi),
                    Rational(0), hi, false, true);
    }
    // The k with the largest nu(d,k) dominates pointwise wherever it applies.
    long long kbest = 1;
    for (long long k = 2; k <= d; ++k)
        if (nu_dk(d, k) > nu_dk(d, kbest)) kbest = k;
    Rational hi = mu(d);
    return make("thm3.10", branch(kbest, Rational(0), hi), Rational(0), hi, false, true);
}

}  // namespace

double BoundCurve::kappa(double tau) const {
    for (const auto& s : segments) {
        if (tau >= s.tau_lo.to_double() - 1e-15 && tau <= s.tau_hi.to_double() + 1e-15)
            return s.slope.to_double() * tau + s.intercept.to_double();
    }
    throw std::domain_error("BoundCurve::kappa: tau outside emitted range");
}

Rational BoundCurve::kappa_exact(const Rational& tau) const {
    for (const auto& s : segments)
        if (tau >= s.tau_lo && tau <= s.tau_hi) return s.kappa_at(tau);
    throw std::domain_error("BoundCurve::kappa_exact: tau outside emitted range");
}

BoundCurve bound_curve(const std::string& source, const CurveParams& params) {
    if (params.d < 1) throw std::invalid_argument("bound_curve: d must be >= 1");
    std::string id = lc(source);
    // Default emission cap for claims that extend to arbitrarily small delta.
    Rational cap = params.tau_max ? *params.tau_max : Rational(params.d + 1);
    if (id == "trivial") return curve_trivial(params, cap);
    if (id == "hoelder" || id == "holder") return curve_hoelder(params, cap);
    if (id == "conj2.1" || id == "wooley") return curve_wooley(params, cap);
    if (id == "conj2.3" || id == "dl" || id == "d-l") return curve_dl(params, cap);
    if (id == "conj2.4") return curve_conj24(params, cap);
    if (id == "conj2.5") return curve_conj25(params, cap);
    if (id == "thm3.1") return curve_thm31(params, cap);
    if (id == "thm3.2") return curve_thm32(params, cap);
    if (id == "cor3.3") return curve_cor33(params, cap);
    if (id == "cor3.4") return curve_cor34(params, cap);
    if (id == "thm3.5") return curve_thm35(params, cap);
    if (id == "cor3.6") return curve_cor36(params, cap);
    if (id == "thm3.7") return curve_thm37(params, cap);
    if (id == "thm3.8") return curve_thm38(params, cap);
    if (id == "thm3.9" || id == "thm3.9.1") return curve_thm39(params, cap, false);
    if (id == "thm3.9.2") return curve_thm39(params, cap, true);
    if (id == "thm3.10") return curve_thm310(params, cap);
    throw std::invalid_argument("bound_curve: unknown source '" + source + "'");
}

std::vector<std::string> known_sources() {
    return {"trivial", "hoelder", "conj2.1", "conj2.3", "conj2.4", "conj2.5", "thm3.1",
            "thm3.2",  "cor3.3",  "cor3.4",  "thm3.5",  "cor3.6",  "thm3.7", "thm3.8",
            "thm3.9",  "thm3.9.2", "thm3.10"};
}

std::vector<BoundCurve> figure_polylines(const std::string& figure) {
    auto line_curve = [](std::string label, long long m_n, long long m_d, long long b_n,
                         long long b_d, const Rational& lo, const Rational& hi) {
        return make(std::move(label),
                    {CurveSegment{lo, hi, Rational(m_n, m_d), Rational(b_n, b_d)}}, lo, hi);
    };
    if (figure == "3.1") {
        BoundCurve conj = line_curve("Conj. 2.5, kappa0(2,2)", -1, 1, 2, 1, Rational(0),
                                     Rational(2));
        BoundCurve dl = line_curve("D-L, kappa0(2,2)", -3, 2, 3, 1, Rational(0), Rational(3));
        CurveParams p{Rational(2), 2, {}, {}, {}};
        BoundCurve cor = curve_cor36(p, Rational(0));
        cor.label = "Cor. 3.6, kappa0(2,2)";
        return {conj, dl, cor};
    }
    if (figure == "3.2") {
        BoundCurve conj = line_curve("Conj. 2.5, kappa0(3,3)", -2, 1, 3, 1, Rational(0),
                                     Rational(3));
        BoundCurve woo = line_curve("Conj. 2.1 (Wooley), kappaSharp(3,3)", -3, 1, 3, 1,
                                    Rational(0), Rational(2, 3));
        BoundCurve dl = line_curve("D-L, kappa0(3,3)", -2, 1, 3, 1, Rational(0), Rational(4));
        CurveParams p{Rational(3), 3, {}, {}, {}};
        BoundCurve cor = curve_cor36(p, Rational(0));
        cor.label = "Cor. 3.6, kappa0(3,3)";
        return {conj, woo, dl, cor};
    }
    if (figure == "3.3") {
        BoundCurve conj = line_curve("Conj. 2.5, kappa0(2,3)", -7, 3, 2, 1, Rational(0),
                                     Rational(3));
        BoundCurve woo = line_curve("Conj. 2.1 (Wooley), kappaSharp(2,3)", -3, 1, 2, 1,
                                    Rational(0), Rational(2, 3));
        BoundCurve dl = line_curve("D-L, kappa0(2,3)", -2, 1, 2, 1, Rational(0), Rational(4));
        CurveParams p{Rational(2), 3, {}, {}, {}};
        BoundCurve cor = curve_cor36(p, Rational(0));
        cor.label = "Cor. 3.6, kappa0(2,3)";
        return {conj, woo, dl, cor};
    }
    throw std::invalid_argument("figure_polylines: unknown figure '" + figure +
                                "' (expected 3.1, 3.2 or 3.3)");
}

}  // namespace weylab
