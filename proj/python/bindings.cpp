#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "algd/specfile.hpp"

namespace py = pybind11;

namespace {

algd::Field field_from(long prime) {
    return prime == 0 ? algd::Field::rationals() : algd::Field::prime(prime);
}

algd::Matrix matrix_from(const std::vector<std::vector<std::string>>& rows, const algd::Field& f) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    algd::Matrix m(r, c, f);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw algd::Error("ShapeMismatch", "ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = algd::Scalar::parse(rows[i][j], f);
    }
    return m;
}

std::vector<std::vector<std::string>> matrix_out(const algd::Matrix& m) {
    std::vector<std::vector<std::string>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(m.at(i, j).str());
    return rows;
}

}  // namespace

PYBIND11_MODULE(_algd, m) {
    m.doc() = "exact computational algebra for finite-dimensional Hopf algebroids";

    m.def(
        "run_spec",
        [](const std::string& json_text, const std::string& category, bool build_only,
           std::uint64_t limit, std::size_t parallel, bool timing) {
            algd::RunOptions opts;
            opts.category = category;
            opts.build_only = build_only;
            opts.limit = limit;
            opts.parallel = parallel;
            opts.timing = timing;
            bool passed = false;
            std::string report = algd::run_spec(json_text, opts, &passed);
            return py::make_tuple(report, passed);
        },
        py::arg("json_text"), py::arg("category") = "all", py::arg("build_only") = false,
        py::arg("limit") = 0, py::arg("parallel") = 1, py::arg("timing") = false,
        "Run the tasks of a JSON input document; returns (report_json, all_passed).");

    m.def("report_text", &algd::report_to_text, py::arg("report_json"),
          "Render a JSON report as the human-readable text format.");

    m.def(
        "rref",
        [](const std::vector<std::vector<std::string>>& rows, long prime) {
            algd::Field f = field_from(prime);
            auto [r, piv] = matrix_from(rows, f).rref();
            return py::make_tuple(matrix_out(r), piv);
        },
        py::arg("rows"), py::arg("prime") = 0,
        "Reduced row echelon form over Q (prime=0) or F_p; returns (rref, pivots).");

    m.def(
        "solve",
        [](const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& b,
           long prime) -> py::object {
            algd::Field f = field_from(prime);
            algd::Matrix m = matrix_from(rows, f);
            std::vector<algd::Scalar> rhs;
            for (auto& s : b) rhs.push_back(algd::Scalar::parse(s, f));
            auto x = m.solve(rhs);
            if (!x) return py::none();
            std::vector<std::string> out;
            for (auto& s : *x) out.push_back(s.str());
            return py::cast(out);
        },
        py::arg("rows"), py::arg("b"), py::arg("prime") = 0,
        "Solve a linear system exactly; None when inconsistent.");

    m.def(
        "kernel",
        [](const std::vector<std::vector<std::string>>& rows, long prime) {
            return matrix_out(matrix_from(rows, field_from(prime)).kernel());
        },
        py::arg("rows"), py::arg("prime") = 0, "Basis rows of the exact null space.");

    m.attr("__version__") = "1.0";
}
