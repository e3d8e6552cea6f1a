// Copyright 2026 The sqkd-rate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqkd/attack.hpp"
#include "sqkd/errors.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/simulator.hpp"
#include "sqkd/stats_file.hpp"

namespace py = pybind11;
using namespace sqkd;

namespace {

void check_index(int i, int j, int k) {
    for (int v : {i, j, k}) {
        if (v != 0 && v != 1) {
            throw py::index_error("indices must be 0 or 1");
        }
    }
}

py::dict stats_to_dict(const ChannelStatistics &s) {
    py::dict d;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                d[py::str(z_key(i, j, k))] = s.p(i, j, k);
            }
        }
    }
    d["p_plus_minus"] = s.p_pm;
    d["p_minus_plus"] = s.p_mp;
    return d;
}

ChannelStatistics stats_from_dict(const py::dict &d) {
    ChannelStatistics s;
    std::size_t used = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                const std::string key = z_key(i, j, k);
                if (!d.contains(key)) {
                    throw py::key_error(key);
                }
                s.p(i, j, k) = d[key.c_str()].cast<double>();
                ++used;
            }
        }
    }
    for (const char *key : {"p_plus_minus", "p_minus_plus"}) {
        if (!d.contains(key)) {
            throw py::key_error(key);
        }
    }
    s.p_pm = d["p_plus_minus"].cast<double>();
    s.p_mp = d["p_minus_plus"].cast<double>();
    if (py::len(d) != used + 2) {
        throw py::value_error("unexpected keys in statistics dict");
    }
    return s;
}

} // namespace

PYBIND11_MODULE(_sqkd, m) {
    m.doc() = "Key-rate bounds and simulation for semi-quantum key distribution";

    auto base = py::register_exception<Error>(m, "SqkdError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<AbortError>(m, "AbortError", base.ptr());
    py::register_exception<InsufficientData>(m, "InsufficientData", base.ptr());

    py::class_<ChannelStatistics>(m, "ChannelStatistics")
        .def(py::init<>())
        .def(py::init(&stats_from_dict), py::arg("values"))
        .def("p", [](const ChannelStatistics &s, int i, int j, int k) {
            check_index(i, j, k);
            return s.p(i, j, k);
        })
        .def("set_p", [](ChannelStatistics &s, int i, int j, int k, double value) {
            check_index(i, j, k);
            s.p(i, j, k) = value;
        })
        .def_readwrite("p_pm", &ChannelStatistics::p_pm)
        .def_readwrite("p_mp", &ChannelStatistics::p_mp)
        .def("to_dict", &stats_to_dict)
        .def("__eq__", [](const ChannelStatistics &a, const ChannelStatistics &b) { return a == b; })
        .def("__repr__", [](const ChannelStatistics &s) {
            return "ChannelStatistics(" + py::repr(stats_to_dict(s)).cast<std::string>() + ")";
        });

    py::class_<KeyRateReport>(m, "KeyRateReport")
        .def_readonly("overlap_bound", &KeyRateReport::overlap_bound)
        .def_readonly("capped_bound", &KeyRateReport::capped_bound)
        .def_readonly("lambda_tilde", &KeyRateReport::lambda_tilde)
        .def_readonly("lambda_clamped", &KeyRateReport::lambda_clamped)
        .def_readonly("s_bec", &KeyRateReport::s_bec)
        .def_readonly("s_ec_upper", &KeyRateReport::s_ec_upper)
        .def_readonly("p_alice_zero", &KeyRateReport::p_alice_zero)
        .def_readonly("joint", &KeyRateReport::joint)
        .def_readonly("h_b_given_a", &KeyRateReport::h_b_given_a)
        .def_readonly("rate", &KeyRateReport::rate)
        .def("__repr__", [](const KeyRateReport &r) {
            return "KeyRateReport(rate=" + std::to_string(r.rate) + ")";
        });

    m.def(
        "symmetric_stats",
        [](double qf, double qr, double qx) { return symmetric_stats({qf, qr, qx}); },
        py::arg("forward_flip"), py::arg("reverse_flip"), py::arg("x_error"));
    m.def(
        "key_rate_bound",
        [](const ChannelStatistics &s, bool renormalize) {
            return key_rate_bound(s, renormalize ? Normalization::Renormalize
                                                 : Normalization::Strict);
        },
        py::arg("stats"), py::arg("renormalize") = false);
    m.def(
        "noise_threshold",
        [](const std::string &scenario, double x_ratio) {
            return noise_threshold(parse_scenario(scenario), x_ratio);
        },
        py::arg("scenario"), py::arg("x_ratio") = 1.0);
    m.def(
        "sweep",
        [](const std::string &scenario, double x_ratio, double q_max, int steps) {
            std::vector<std::pair<double, double>> out;
            for (const auto &p : sweep(parse_scenario(scenario), x_ratio, q_max, steps)) {
                out.emplace_back(p.q, p.rate);
            }
            return out;
        },
        py::arg("scenario"), py::arg("x_ratio"), py::arg("q_max"), py::arg("steps"));

    py::class_<CollectiveAttack>(m, "CollectiveAttack")
        .def(py::init(&validate_attack), py::arg("forward"), py::arg("reverse"),
             py::arg("ancilla_dim"))
        .def_property_readonly("ancilla_dim", &CollectiveAttack::ancilla_dim)
        .def_property_readonly("forward", &CollectiveAttack::forward)
        .def_property_readonly("reverse", &CollectiveAttack::reverse);

    m.def("identity_attack", &identity_attack, py::arg("ancilla_dim") = 1);
    m.def("z_measure_attack", &z_measure_attack);
    m.def("symmetric_realizing_attack", &symmetric_realizing_attack, py::arg("forward_flip"),
          py::arg("reverse_flip"));
    m.def(
        "random_attack",
        [](std::size_t d, std::uint64_t seed) { return random_attack(d, seed); },
        py::arg("ancilla_dim"), py::arg("seed"));
    m.def(
        "random_weak_attack",
        [](std::size_t d, double strength, std::uint64_t seed) {
            Rng rng(seed);
            return random_weak_attack(d, strength, rng);
        },
        py::arg("ancilla_dim"), py::arg("strength"), py::arg("seed"));
    m.def(
        "statistics", [](const CollectiveAttack &a) { return statistics(a); }, py::arg("attack"));
    m.def("overlap_e000_e131", &overlap_e000_e131, py::arg("attack"));
    m.def("rho_BE", &rho_BE, py::arg("attack"));
    m.def("rho_BEC", &rho_BEC, py::arg("attack"));
    m.def("exact_collective_rate", &exact_collective_rate, py::arg("attack"));

    py::class_<StatisticsEstimate>(m, "StatisticsEstimate")
        .def_readonly("stats", &StatisticsEstimate::stats)
        .def_readonly("standard_error", &StatisticsEstimate::standard_error)
        .def_readonly("z_class_size", &StatisticsEstimate::z_class_size)
        .def_readonly("x_class_size", &StatisticsEstimate::x_class_size)
        .def("rate_standard_error", [](const StatisticsEstimate &e) {
            return rate_standard_error(e.stats, e.z_class_size, e.x_class_size);
        });

    m.def(
        "simulate",
        [](const CollectiveAttack &attack, std::uint64_t iterations, std::uint64_t seed,
           unsigned workers, double prob_z_basis, double prob_measure_resend) {
            ProtocolConfig config;
            config.iterations = iterations;
            config.seed = seed;
            config.workers = workers;
            config.prob_z_basis = prob_z_basis;
            config.prob_measure_resend = prob_measure_resend;
            ProtocolRun run;
            {
                py::gil_scoped_release release;
                run = run_protocol(attack, config);
            }
            return py::make_tuple(estimate_statistics(run.tally), qber(run.keys));
        },
        py::arg("attack"), py::arg("iterations"), py::arg("seed"), py::arg("workers") = 1,
        py::arg("prob_z_basis") = 0.5, py::arg("prob_measure_resend") = 0.5,
        "Runs the protocol and returns (StatisticsEstimate, raw-key QBER).");

    m.def(
        "read_stats_file", [](const std::string &path) { return read_stats_file(path); },
        py::arg("path"));
    m.def(
        "write_stats_file",
        [](const std::string &path, const ChannelStatistics &s) { write_stats_file(path, s); },
        py::arg("path"), py::arg("stats"));
}
