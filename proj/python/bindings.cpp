#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infobound/bounds.hpp"
#include "infobound/channels.hpp"
#include "infobound/estimate.hpp"
#include "infobound/info.hpp"
#include "infobound/mc.hpp"
#include "infobound/nuisance.hpp"
#include "infobound/sweep.hpp"

namespace py = pybind11;
using namespace infobound;

PYBIND11_MODULE(_infobound, m) {
    m.doc() = "Information bounds for parametric channels";

    py::class_<QuadConfig>(m, "QuadConfig")
        .def(py::init<>())
        .def_readwrite("gauss_nodes", &QuadConfig::gauss_nodes)
        .def_readwrite("support_halfwidth_sigmas", &QuadConfig::support_halfwidth_sigmas)
        .def_readwrite("series_tail_mass", &QuadConfig::series_tail_mass)
        .def_readwrite("root_tol", &QuadConfig::root_tol)
        .def_readwrite("fd_step_rel", &QuadConfig::fd_step_rel)
        .def("validate", &QuadConfig::validate);

    py::class_<PriorSpec>(m, "PriorSpec")
        .def_static("gaussian", &PriorSpec::gaussian, py::arg("mean"), py::arg("variance"))
        .def_static("neg_exp", &PriorSpec::neg_exp, py::arg("mean"))
        .def_static("tabulated", &PriorSpec::tabulated, py::arg("grid"), py::arg("density"))
        .def_property_readonly("mean", &PriorSpec::mean)
        .def_property_readonly("variance", &PriorSpec::variance)
        .def("density", &PriorSpec::density, py::arg("x"));

    py::class_<ChannelModel>(m, "ChannelModel")
        .def_static("gaussian_linear", &ChannelModel::gaussian_linear, py::arg("gain"),
                    py::arg("bias"), py::arg("noise_variance"))
        .def_static("poisson_linear", &ChannelModel::poisson_linear, py::arg("gain"),
                    py::arg("bias"))
        .def_property_readonly("gain", &ChannelModel::gain)
        .def_property_readonly("bias", &ChannelModel::bias)
        .def("logpdf", &ChannelModel::logpdf, py::arg("y"), py::arg("x"))
        .def("score", &ChannelModel::score, py::arg("y"), py::arg("x"));

    py::class_<NuisanceGaussianParams>(m, "NuisanceGaussianParams")
        .def(py::init([](double gain_x, double gain_u, double coupling, double var_x_given_u,
                         double var_u, double mean_u, double noise_var) {
                 return NuisanceGaussianParams{gain_x, gain_u, coupling, var_x_given_u, var_u,
                                               mean_u, noise_var};
             }),
             py::arg("gain_x") = 1.0, py::arg("gain_u") = 1.0, py::arg("coupling") = 0.0,
             py::arg("var_x_given_u") = 1.0, py::arg("var_u") = 1.0, py::arg("mean_u") = 0.0,
             py::arg("noise_var") = 1.0)
        .def_readwrite("gain_x", &NuisanceGaussianParams::gain_x)
        .def_readwrite("gain_u", &NuisanceGaussianParams::gain_u)
        .def_readwrite("coupling", &NuisanceGaussianParams::coupling)
        .def_readwrite("var_x_given_u", &NuisanceGaussianParams::var_x_given_u)
        .def_readwrite("var_u", &NuisanceGaussianParams::var_u)
        .def_readwrite("mean_u", &NuisanceGaussianParams::mean_u)
        .def_readwrite("noise_var", &NuisanceGaussianParams::noise_var)
        .def("chi", &NuisanceGaussianParams::chi)
        .def("eta", &NuisanceGaussianParams::eta);

    py::class_<BoundValue>(m, "BoundValue")
        .def_readonly("value", &BoundValue::value)
        .def_readonly("infinite", &BoundValue::infinite);

    py::class_<NuisanceMmse>(m, "NuisanceMmse")
        .def_readonly("with_nuisance", &NuisanceMmse::with_nuisance)
        .def_readonly("without_nuisance", &NuisanceMmse::without_nuisance);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &McConfig::n_samples)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("batches", &McConfig::batches);

    py::class_<McResult>(m, "McResult")
        .def_readonly("estimate", &McResult::estimate)
        .def_readonly("stderr_est", &McResult::stderr_est)
        .def_readonly("skipped", &McResult::skipped)
        .def_readonly("skip_warning", &McResult::skip_warning);

    const QuadConfig default_cfg;

    m.def("differential_entropy", &differential_entropy, py::arg("prior"),
          py::arg("cfg") = default_cfg);
    m.def("mutual_information_exact", &mutual_information_exact, py::arg("prior"),
          py::arg("channel"), py::arg("cfg") = default_cfg);
    m.def("mi_second_order", &mi_second_order, py::arg("prior"), py::arg("channel"),
          py::arg("cfg") = default_cfg);
    m.def("fisher_information", &fisher_information, py::arg("channel"), py::arg("x"),
          py::arg("cfg") = default_cfg);
    m.def("chapman_robbins_K", &chapman_robbins_K, py::arg("channel"), py::arg("x"),
          py::arg("x_prime"), py::arg("cfg") = default_cfg);
    m.def("mmse", &mmse, py::arg("prior"), py::arg("channel"), py::arg("cfg") = default_cfg);
    m.def("posterior_mean", &posterior_mean, py::arg("prior"), py::arg("channel"), py::arg("y"),
          py::arg("cfg") = default_cfg);
    m.def("mi_lower_bound", &mi_lower_bound, py::arg("prior"), py::arg("channel"),
          py::arg("cfg") = default_cfg);
    m.def("equivocation_upper_bound", &equivocation_upper_bound, py::arg("prior"),
          py::arg("channel"), py::arg("cfg") = default_cfg);
    m.def("bound_threshold_zero_bias", &bound_threshold_zero_bias,
          py::arg("cfg") = default_cfg);

    m.def("poisson_mi", &poisson_mi, py::arg("xbar"), py::arg("a"), py::arg("b"),
          py::arg("cfg") = default_cfg);
    m.def("poisson_mmse", &poisson_mmse, py::arg("xbar"), py::arg("a"), py::arg("b"),
          py::arg("cfg") = default_cfg);
    m.def("poisson_marginal", &poisson_marginal, py::arg("xbar"), py::arg("a"), py::arg("b"),
          py::arg("y"));

    m.def("mi_with_nuisance", &mi_with_nuisance, py::arg("params"));
    m.def("mi_without_nuisance", &mi_without_nuisance, py::arg("params"));
    m.def("mmse_with_without_nuisance", &mmse_with_without_nuisance, py::arg("params"));

    m.def("mc_mmse", &mc_mmse, py::arg("prior"), py::arg("channel"), py::arg("mc_cfg"),
          py::arg("cfg") = default_cfg);
    m.def("mc_mi", &mc_mi, py::arg("prior"), py::arg("channel"), py::arg("mc_cfg"),
          py::arg("cfg") = default_cfg);
    m.def("mc_mmse_nuisance", &mc_mmse_nuisance, py::arg("params"), py::arg("condition_on_u"),
          py::arg("mc_cfg"));
    m.def("mc_mi_nuisance", &mc_mi_nuisance, py::arg("params"), py::arg("mc_cfg"));

    py::register_exception<DegenerateEvidenceError>(m, "DegenerateEvidenceError");
}
