#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holmc/constants.hpp"
#include "holmc/experiment.hpp"
#include "holmc/metrics.hpp"
#include "holmc/samplers.hpp"
#include "holmc/taming.hpp"

namespace py = pybind11;
using namespace holmc;

namespace {

// pybind11 holders must be non-const
using PyModel = std::shared_ptr<PotentialModel>;
using PyMarginal = std::shared_ptr<Marginal1D>;
PyModel unconst(ModelPtr p) { return std::const_pointer_cast<PotentialModel>(std::move(p)); }
PyMarginal unconst(MarginalPtr p) { return std::const_pointer_cast<Marginal1D>(std::move(p)); }

ModelPtr model_by_name(const std::string& name, int d) {
  if (name == "gaussian") return make_gaussian(d);
  if (name == "mixture") return make_gaussian_mixture(mixture_center(d));
  if (name == "doublewell") return make_double_well(d);
  throw std::invalid_argument("unknown potential " + name);
}

ConstantsReport report_by_name(const std::string& name, int d, double beta, double m1) {
  if (name == "doublewell") return build_report(double_well_assumptions(d, beta), m1);
  if (name == "gaussian") return build_report(gaussian_assumptions(d, beta));
  if (name == "mixture") return build_report(mixture_assumptions(mixture_center(d), beta));
  throw std::invalid_argument("unknown potential " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "High-order Langevin samplers";

  py::register_exception<ChainAborted>(m, "ChainAborted", PyExc_RuntimeError);

  py::class_<PotentialModel, PyModel>(m, "Potential")
      .def_property_readonly("name", &PotentialModel::name)
      .def_property_readonly("dimension", &PotentialModel::dimension)
      .def_property_readonly("linear", [](const PotentialModel& p) { return p.regime() == Regime::linear; })
      .def("value", &PotentialModel::value)
      .def("gradient", &PotentialModel::gradient)
      .def("hvp", &PotentialModel::hvp)
      .def("upsilon", &PotentialModel::upsilon)
      .def("dense_hessian", &PotentialModel::dense_hessian);

  m.def("potential", [](const std::string& n, int d) { return unconst(model_by_name(n, d)); }, py::arg("name"), py::arg("d"));
  m.def("logistic_potential", [](const Eigen::MatrixXd& z, const std::vector<int>& y) {
    LogisticDataset ds{z, y};
    return unconst(make_logistic(std::move(ds)));
  }, py::arg("z"), py::arg("y"));
  m.def("generate_logistic_data", [](int d, int n, const Vector& theta_star, std::uint64_t seed) {
    auto ds = generate_logistic_data(d, n, theta_star, seed);
    return py::make_tuple(ds.z, ds.y);
  }, py::arg("d"), py::arg("n"), py::arg("theta_star"), py::arg("seed"));

  m.def("taming_factor", [](double lambda, double norm_theta) { return taming_factor({lambda, 2, 1.0, norm_theta}); },
        py::arg("lambda_"), py::arg("norm_theta"));

  m.def("run_chain",
        [](const PyModel& model, const std::string& algorithm, double lambda, std::uint64_t n, const Vector& theta0,
           std::uint64_t seed, double beta, std::uint64_t thin) {
          SamplerConfig cfg;
          cfg.algorithm = parse_algorithm(algorithm);
          cfg.lambda = lambda;
          cfg.n = n;
          cfg.theta0 = theta0;
          cfg.seed = seed;
          cfg.beta = beta;
          cfg.thin = thin;
          Chain ch;
          {
            py::gil_scoped_release release;
            ch = run_chain(*model, cfg);
          }
          Matrix states(static_cast<Eigen::Index>(ch.states.size()), theta0.size());
          for (std::size_t i = 0; i < ch.states.size(); ++i) states.row(static_cast<Eigen::Index>(i)) = ch.states[i];
          return py::make_tuple(ch.final_state, states);
        },
        py::arg("model"), py::arg("algorithm"), py::arg("lambda_"), py::arg("n"), py::arg("theta0"),
        py::arg("seed") = 0, py::arg("beta") = 1.0, py::arg("thin") = 0,
        "Returns (final_state, thinned_states).");

  m.def("constants_json", [](const std::string& name, int d, double beta, double m1) {
    return report_by_name(name, d, beta, m1).to_json();
  }, py::arg("potential"), py::arg("d"), py::arg("beta") = 1.0, py::arg("m1") = 1.0);

  m.def("select_hyperparams",
        [](const std::string& name, int d, double delta, const std::string& metric, double theta0_value) {
          const auto rep = report_by_name(name, d, 1.0, 1.0);
          const auto hp = select_hyperparams(rep, delta, default_moment(rep, Vector::Constant(d, theta0_value)),
                                             metric == "W2" ? Metric::W2 : Metric::W1);
          py::dict out;
          out["log10_lambda"] = hp.lambda.log10();
          out["log10_n"] = hp.n.log10();
          out["n"] = hp.n_int ? py::cast(*hp.n_int) : py::none();
          return out;
        },
        py::arg("potential"), py::arg("d"), py::arg("delta"), py::arg("metric") = "W1",
        py::arg("theta0_value") = 0.0);

  py::class_<Marginal1D, PyMarginal>(m, "Marginal")
      .def("pdf", &Marginal1D::pdf)
      .def("cdf", &Marginal1D::cdf)
      .def("quantile", &Marginal1D::quantile)
      .def("support", &Marginal1D::support);
  m.def("marginal", [](const std::string& n, int d) { return unconst(marginal_for(n, d)); }, py::arg("potential"), py::arg("d"));
  m.def("w1_vs_marginal", &w1_vs_marginal, py::arg("samples"), py::arg("marginal"));
  m.def("write_density_grid", &write_density_grid_csv, py::arg("marginal"), py::arg("path"),
        py::arg("points") = 801);

  m.def("run_experiment",
        [](const std::string& scenario, const std::string& potential, std::vector<int> dims,
           std::vector<double> lambdas, std::vector<std::string> algorithms, int chains, std::uint64_t seed,
           std::uint64_t iterations, std::uint64_t checkpoint_every, std::string out_dir) {
          ExperimentConfig c;
          if (scenario == "figure1")
            c.scenario = Scenario::figure1;
          else if (scenario == "tables")
            c.scenario = Scenario::sampling_tables;
          else if (scenario == "logistic")
            c.scenario = Scenario::logistic;
          else
            throw std::invalid_argument("unknown scenario " + scenario);
          c.potential = potential;
          c.dims = std::move(dims);
          c.lambdas = std::move(lambdas);
          for (const auto& a : algorithms) c.algorithms.push_back(parse_algorithm(a));
          c.chains = chains;
          c.seed = seed;
          c.iterations = iterations;
          c.checkpoint_every = checkpoint_every;
          c.out_dir = std::move(out_dir);
          py::gil_scoped_release release;
          return run_experiment(c).summary_json();
        },
        py::arg("scenario"), py::arg("potential"), py::arg("dims"), py::arg("lambdas"),
        py::arg("algorithms") = std::vector<std::string>{}, py::arg("chains") = 200, py::arg("seed") = 1,
        py::arg("iterations") = 0, py::arg("checkpoint_every") = 0, py::arg("out_dir") = "",
        "Runs an experiment and returns the summary JSON string.");
}
