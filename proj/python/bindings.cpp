#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylab/arc_structure.hpp"
#include "weylab/bound_curves.hpp"
#include "weylab/box_mean.hpp"
#include "weylab/exponent.hpp"
#include "weylab/primes.hpp"
#include "weylab/rational_sums.hpp"
#include "weylab/report.hpp"
#include "weylab/vinogradov.hpp"

namespace py = pybind11;
using namespace weylab;

namespace {

// Reports cross the boundary as plain dicts via the JSON layer.
py::object to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

QuadMode parse_mode(const std::string& mode) {
    if (mode == "exact-torus") return QuadMode::ExactTorus;
    if (mode == "midpoint-grid") return QuadMode::MidpointGrid;
    if (mode == "qmc") return QuadMode::Qmc;
    throw std::invalid_argument("mode must be exact-torus, midpoint-grid or qmc");
}

}  // namespace

PYBIND11_MODULE(_weylab, m) {
    m.doc() = "local mean values of Weyl sums: exact counts, quadrature, exponent curves";

    // exponent engine
    m.def("s_of_d", &s_of_d, py::arg("d"));
    m.def("sigma_d", py::overload_cast<long long, double>(&sigma_d), py::arg("d"),
          py::arg("alpha"));
    m.def("alpha_0", &alpha_0, py::arg("d"), py::arg("s"));
    m.def("eta", &eta, py::arg("s"), py::arg("d"), py::arg("ell"));
    m.def("theta", [](long long d) {
        Rational r = theta(d);
        return py::make_tuple(r.num(), r.den());
    }, py::arg("d"));
    m.def("nu", [](long long d, long long k) {
        Rational r = nu_dk(d, k);
        return py::make_tuple(r.num(), r.den());
    }, py::arg("d"), py::arg("k"));
    m.def("mu", [](long long d) {
        Rational r = mu(d);
        return py::make_tuple(r.num(), r.den());
    }, py::arg("d"));
    m.def("big_D", &big_D, py::arg("d"));
    m.def("rho", &rho, py::arg("d"));

    // bound curves
    m.def("bound_curve",
          [](const std::string& source, const std::string& s, long long d,
             const std::string& alpha, long long k, const std::string& tau_max) {
              CurveParams p;
              p.s = Rational::parse(s);
              p.d = d;
              if (!alpha.empty()) p.alpha = Rational::parse(alpha);
              if (k > 0) p.k = k;
              if (!tau_max.empty()) p.tau_max = Rational::parse(tau_max);
              return to_py(to_json(bound_curve(source, p)));
          },
          py::arg("source"), py::arg("s"), py::arg("d"), py::arg("alpha") = "",
          py::arg("k") = 0, py::arg("tau_max") = "");
    m.def("figure_polylines", [](const std::string& figure) {
        py::list out;
        for (const auto& c : figure_polylines(figure)) out.append(to_py(to_json(c)));
        return out;
    }, py::arg("figure"));
    m.def("known_sources", &known_sources);

    // weyl/gauss sums
    m.def("weyl_sum",
          [](const std::vector<double>& x, long long N) {
              return weyl_sum(TorusPoint(x), N);
          },
          py::arg("x"), py::arg("N"));
    m.def("weyl_sum_weighted",
          [](const std::vector<double>& x, const std::vector<std::complex<double>>& a,
             long long N) { return weyl_sum(TorusPoint(x), WeightSeq(a), N); },
          py::arg("x"), py::arg("a"), py::arg("N"));
    m.def("gauss_sum", &gauss_sum, py::arg("x1"), py::arg("x2"), py::arg("N"));
    m.def("rational_complete_sum",
          [](long long p, const std::vector<long long>& u) {
              return rational_complete_sum(PrimePoint(p, u));
          },
          py::arg("p"), py::arg("u"));
    m.def("incomplete_ratio_scan",
          [](long long d, long long p, long long samples, unsigned long long seed) {
              return to_py(to_json(incomplete_ratio_scan(d, p, samples, seed)));
          },
          py::arg("d"), py::arg("p"), py::arg("samples") = 0, py::arg("seed") = 1);
    m.def("is_prime", [](unsigned long long n) { return is_prime_u64(n); }, py::arg("n"));

    // exact counting
    m.def("count_J",
          [](long long s, long long d, long long N, long long budget) {
              return to_py(to_json(count_J(s, d, N, budget)));
          },
          py::arg("s"), py::arg("d"), py::arg("N"),
          py::arg("mem_budget") = kDefaultMemBudget);
    m.def("count_J_inhom",
          [](long long s, long long d, const std::vector<long long>& h, long long N,
             long long budget) { return to_py(to_json(count_J_inhom(s, d, h, N, budget))); },
          py::arg("s"), py::arg("d"), py::arg("h"), py::arg("N"),
          py::arg("mem_budget") = kDefaultMemBudget);
    m.def("count_J_box",
          [](long long s, long long d, double delta, long long N, long long budget) {
              return to_py(to_json(count_J_box(s, d, delta, N, budget)));
          },
          py::arg("s"), py::arg("d"), py::arg("delta"), py::arg("N"),
          py::arg("mem_budget") = kDefaultMemBudget);
    m.def("hj_count", [](long long j, long long s, long long d, long long N, double delta) {
        return hj_count(HjSpec{j, s, d, N, delta});
    }, py::arg("j"), py::arg("s"), py::arg("d"), py::arg("N"), py::arg("delta"));
    m.def("verify_partition",
          [](long long s, long long d, double delta, long long N) {
              return to_py(to_json(verify_partition(s, d, delta, N)));
          },
          py::arg("s"), py::arg("d"), py::arg("delta"), py::arg("N"));

    // box mean values
    m.def("integrate_box",
          [](double s, long long d, long long N, double delta, const std::vector<double>& xi,
             const std::string& mode, double tol, long long budget) {
              std::vector<double> corner =
                  xi.empty() ? std::vector<double>(static_cast<size_t>(d), 0.0) : xi;
              BoxSpec box(TorusPoint(corner), delta);
              return to_py(to_json(
                  integrate_box(s, d, WeightSeq::ones(N), box, N, parse_mode(mode), tol,
                                budget)));
          },
          py::arg("s"), py::arg("d"), py::arg("N"), py::arg("delta"),
          py::arg("xi") = std::vector<double>{}, py::arg("mode") = "qmc",
          py::arg("tol") = 1e-2, py::arg("node_budget") = 1LL << 26);
    m.def("empirical_kappa",
          [](double s, long long d, double tau, const std::vector<long long>& ladder,
             const std::string& variant) {
              return to_py(to_json(empirical_kappa(s, d, tau, ladder, variant)));
          },
          py::arg("s"), py::arg("d"), py::arg("tau"), py::arg("N_list"),
          py::arg("variant") = "origin");
    m.def("majorarc_witness",
          [](long long d, long long N, double c, long long samples, double delta,
             unsigned long long seed) {
              return to_py(to_json(majorarc_witness(d, N, c, samples, delta, seed)));
          },
          py::arg("d"), py::arg("N"), py::arg("c"), py::arg("samples") = 1000,
          py::arg("delta") = 1.0, py::arg("seed") = 1);
    m.def("schrodinger_scan",
          [](double x0, double t0, double delta, long long N, long long t_samples) {
              return to_py(to_json(schrodinger_scan(x0, t0, delta, N, t_samples)));
          },
          py::arg("x0"), py::arg("t0"), py::arg("delta"), py::arg("N"),
          py::arg("t_samples") = 64);

    // arc structure
    m.def("detect_rational_structure",
          [](const std::vector<double>& x, long long N, double A, long long cap) {
              return to_py(to_json(detect_rational_structure(TorusPoint(x), N, A, cap)));
          },
          py::arg("x"), py::arg("N"), py::arg("A"), py::arg("modulus_cap") = 1000000);
    m.def("level_set_measure",
          [](long long d, const std::vector<double>& xi, double delta, double A, long long N,
             const std::string& sampler, long long samples, unsigned long long seed) {
              BoxSpec box(TorusPoint(xi), delta);
              return to_py(to_json(level_set_measure(d, box, A, N, sampler, samples, seed)));
          },
          py::arg("d"), py::arg("xi"), py::arg("delta"), py::arg("A"), py::arg("N"),
          py::arg("sampler") = "monte-carlo", py::arg("samples") = 10000, py::arg("seed") = 1);
    m.def("prime_field_scan",
          [](long long d, long long p, double gamma, long long box_side,
             unsigned long long seed) {
              return to_py(to_json(prime_field_scan(d, p, gamma, box_side, nullptr, seed)));
          },
          py::arg("d"), py::arg("p"), py::arg("gamma"), py::arg("box_side") = 0,
          py::arg("seed") = 1);
    m.def("monomial_curve_density",
          [](long long p, long long k, const std::vector<long long>& a, long long L,
             const std::vector<long long>& corner) {
              return to_py(to_json(monomial_curve_density(p, k, a, L, corner)));
          },
          py::arg("p"), py::arg("k"), py::arg("a"), py::arg("L"), py::arg("corner"));
    m.def("lower_bound_witness",
          [](long long s, long long d, long long N, double delta,
             const std::vector<double>& xi, long long k, unsigned long long seed) {
              return to_py(to_json(
                  lower_bound_witness(s, d, N, delta, TorusPoint(xi), k, ArcConstants{}, seed)));
          },
          py::arg("s"), py::arg("d"), py::arg("N"), py::arg("delta"), py::arg("xi"),
          py::arg("k") = 1, py::arg("seed") = 1);
}
