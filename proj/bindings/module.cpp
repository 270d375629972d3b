#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padicsub/cli.hpp"
#include "padicsub/convergence.hpp"
#include "padicsub/smoothness.hpp"
#include "padicsub/wavelet.hpp"

namespace py = pybind11;
using namespace padicsub;

namespace {

IpElement ip_from_string(long p, const std::string& text) {
    mpq_class r = parse_rational(text);
    if (r == 0) return IpElement(p);
    long gamma = integer_valuation(r.get_den(), p);
    if (r.get_den() != pow_z(p, gamma))
        throw std::invalid_argument("denominator is not a power of p: " + text);
    return IpElement::canonical(p, r.get_num(), gamma);
}

py::object json_loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(padicsub, m) {
    m.doc() = "p-adic refinement mask analysis: convergence certification, cascade "
              "iterates, smoothness, and wavelet completion";

    py::class_<Mask>(m, "Mask")
        .def_static("from_json", [](const std::string& text) { return parse_mask(text); },
                    py::arg("text"))
        .def_static("load", [](const std::string& path) { return load_mask(path); },
                    py::arg("path"))
        .def_property_readonly("p", &Mask::prime)
        .def_property_readonly("N", &Mask::order)
        .def("to_json", &mask_to_json)
        .def("coefficients", [](const Mask& m) {
            std::vector<std::pair<std::string, std::complex<double>>> out;
            for (const auto& [a, v] : m.coefficients().terms())
                out.emplace_back(a.to_string(), v.to_complex());
            return out;
        });

    m.def("validate", [](const Mask& m) {
        ValidationReport r = validate(m);
        py::dict d;
        d["pass"] = r.pass;
        d["sum"] = gaussian_to_string(r.coefficient_sum);
        return d;
    });

    m.def("symbol", [](const Mask& m, const std::string& xi) {
        return symbol(m, PadicRational(m.prime(), parse_rational(xi)));
    }, py::arg("mask"), py::arg("xi"));

    m.def("orthonormality_precheck", [](const Mask& m, double tol) {
        PrecheckReport r = orthonormality_precheck(m, tol);
        py::dict d;
        d["pass"] = r.pass;
        py::list entries;
        for (const auto& e : r.entries) {
            py::dict ed;
            ed["k"] = e.k;
            ed["value"] = e.value;
            ed["required_modulus"] = e.required_modulus;
            ed["ok"] = e.ok;
            entries.append(ed);
        }
        d["entries"] = entries;
        return d;
    }, py::arg("mask"), py::arg("tol") = 1e-10);

    m.def("sum_rules", [](const Mask& m) {
        py::dict d;
        for (const auto& [eps, v] : sum_rules(m))
            d[py::str(eps.to_string())] = gaussian_to_string(v);
        return d;
    });

    m.def("certify", [](const Mask& m, const std::string& q, long depth, long long budget,
                        int threads) {
        return json_loads(certificate_to_json(certify(m, QValue::parse(q), depth, budget,
                                                      threads)));
    }, py::arg("mask"), py::arg("q") = "2", py::arg("depth") = kDefaultDepth,
       py::arg("budget") = kDefaultMulBudget, py::arg("threads") = 1);

    m.def("cascade_cells", [](const Mask& m, long n, std::size_t cell_budget) {
        BallStepFunction f = cascade_iterate(m, n, cell_budget);
        std::vector<py::tuple> rows;
        for (const auto& [c, v] : f.cells())
            rows.push_back(py::make_tuple(f.level(), rational_to_string(c),
                                          monna_coordinate(f.prime(), c).get_d(),
                                          v.to_complex()));
        return rows;
    }, py::arg("mask"), py::arg("n"), py::arg("cell_budget") = kDefaultCellBudget);

    m.def("cascade_csv", [](const Mask& m, long n, std::size_t cell_budget) {
        return step_function_csv(cascade_iterate(m, n, cell_budget));
    }, py::arg("mask"), py::arg("n"), py::arg("cell_budget") = kDefaultCellBudget);

    m.def("smoothness", [](const Mask& m, const std::string& q, long iters, long lo, long hi) {
        return json_loads(smoothness_to_json(
            critical_exponent_estimate(m, QValue::parse(q), iters, lo, hi)));
    }, py::arg("mask"), py::arg("q") = "2", py::arg("iters") = 6, py::arg("lo") = 0,
       py::arg("hi") = 6);

    m.def("complete_masks", [](const Mask& m) {
        WaveletMasks w = complete_masks(m);
        UnitarityReport rep = verify_unitary(build_U(mask_coefficient_vector(m), w.wavelets), 1e-9);
        py::dict d;
        d["wavelets"] = w.wavelets;
        d["max_deviation"] = rep.max_deviation;
        d["unitary"] = rep.pass;
        return d;
    });

    auto ip = m.def_submodule("ip", "arithmetic in the shift group");
    ip.def("canonical", [](long p, long k, long s) {
        return IpElement::canonical(p, k, s).to_string();
    }, py::arg("p"), py::arg("k"), py::arg("s"));
    ip.def("add", [](long p, const std::string& a, const std::string& b) {
        return group_add(ip_from_string(p, a), ip_from_string(p, b)).to_string();
    });
    ip.def("neg", [](long p, const std::string& a) {
        return group_neg(ip_from_string(p, a)).to_string();
    });
    ip.def("frac_part", [](long p, const std::string& x) {
        return frac_part(PadicRational(p, parse_rational(x))).to_string();
    });
    ip.def("norm", [](long p, const std::string& x) {
        return padic_norm(PadicRational(p, parse_rational(x))).get_d();
    });

    m.attr("__version__") = "0.1.0";
}
