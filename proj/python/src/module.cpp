#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact formal Hodge structures and Laumon 1-motives over Q(i)";

    m.def(
        "execute",
        [](const std::string& command, const std::vector<std::string>& documents, bool check_iso, bool report,
           const std::string& profile, std::uint64_t seed, std::uint64_t seeds, unsigned threads) {
            fhodge::CommandOptions opts{check_iso, report, profile, seed, seeds, threads};
            fhodge::CommandResult r;
            {
                py::gil_scoped_release release;
                r = fhodge::execute(command, documents, opts);
            }
            return py::make_tuple(r.code, r.out, r.err);
        },
        py::arg("command"), py::arg("documents"), py::arg("check_iso") = false, py::arg("report") = false,
        py::arg("profile") = "", py::arg("seed") = 1, py::arg("seeds") = 1000, py::arg("threads") = 0,
        "Run one command on JSON document texts; returns (exit_code, stdout, stderr).");

    m.attr("EXIT_OK") = static_cast<int>(fhodge::kExitOk);
    m.attr("EXIT_DOMAIN") = static_cast<int>(fhodge::kExitDomain);
    m.attr("EXIT_MALFORMED") = static_cast<int>(fhodge::kExitMalformed);
}
