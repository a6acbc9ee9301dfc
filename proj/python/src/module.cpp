#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "renyi/channel_div.hpp"

namespace py = pybind11;
using namespace renyi;

namespace {

SharpOptions make_options(int bits, bool both_brackets, double tol, int max_iter, int size_budget) {
  SharpOptions o;
  o.bits = bits;
  o.both_brackets = both_brackets;
  o.solver.tol = tol;
  o.solver.max_iter = max_iter;
  o.solver.size_budget = size_budget;
  return o;
}

py::dict solver_dict(const SolveSummary& s) {
  py::dict d;
  d["status"] = std::string(sdp::to_string(s.status));
  d["iterations"] = s.iterations;
  d["gap"] = s.gap;
  d["primal_res"] = s.primal_res;
  d["dual_res"] = s.dual_res;
  return d;
}

QChannel channel_from(const CMatrix& choi, int dim_in, int dim_out) {
  return QChannel::from_choi(HermitianOperator(choi, 1e-9), dim_in, dim_out);
}

#define SHARP_ARGS                                                                     \
  py::arg("bits") = kDefaultDyadicLevel, py::arg("both_brackets") = true,              \
  py::arg("tol") = 1e-8, py::arg("max_iter") = 200, py::arg("size_budget") = 1200

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Convex-optimization Renyi divergences for quantum states and channels";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // Input problems map to ValueError; solver and budget problems to RuntimeError.
      switch (e.kind()) {
        case ErrorKind::SolverFailure:
        case ErrorKind::SizeBudget:
          PyErr_SetString(PyExc_RuntimeError, e.what());
          break;
        default:
          PyErr_SetString(PyExc_ValueError, e.what());
      }
    }
  });

  m.def(
      "d_sharp_state",
      [](const CMatrix& rho, const CMatrix& sigma, double alpha, int bits, bool both, double tol,
         int max_iter, int budget) {
        const auto r = d_sharp_state(HermitianOperator(rho, 1e-9), HermitianOperator(sigma, 1e-9), alpha,
                                     make_options(bits, both, tol, max_iter, budget));
        py::dict d;
        d["value"] = r.value_D;
        d["Q"] = r.value_Q;
        d["alpha_eff"] = r.alpha_eff;
        d["D_lo"] = r.D_lo;
        d["D_hi"] = r.D_hi;
        d["witness_ok"] = r.witness_ok;
        d["witness"] = r.witness_A ? py::cast(CMatrix(r.witness_A->matrix())) : py::none();
        d["solver"] = solver_dict(r.solver);
        return d;
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"), SHARP_ARGS,
      "D#_alpha(rho || sigma) and its dyadic bracket; value is +inf under a support violation.");

  m.def("d_sandwiched",
        [](const CMatrix& rho, const CMatrix& sigma, double alpha) {
          return d_sandwiched(HermitianOperator(rho, 1e-9), HermitianOperator(sigma, 1e-9), alpha);
        },
        py::arg("rho"), py::arg("sigma"), py::arg("alpha"));
  m.def("d_geometric",
        [](const CMatrix& rho, const CMatrix& sigma, double alpha) {
          return d_geometric(HermitianOperator(rho, 1e-9), HermitianOperator(sigma, 1e-9), alpha);
        },
        py::arg("rho"), py::arg("sigma"), py::arg("alpha"));
  m.def("d_max",
        [](const CMatrix& rho, const CMatrix& sigma) {
          return d_max(HermitianOperator(rho, 1e-9), HermitianOperator(sigma, 1e-9));
        },
        py::arg("rho"), py::arg("sigma"));
  m.def("d_classical", &d_classical, py::arg("p"), py::arg("q"), py::arg("alpha"));
  m.def("mean",
        [](const CMatrix& a, const CMatrix& b, double beta) {
          return CMatrix(mean_eval(HermitianOperator(a, 1e-9), HermitianOperator(b, 1e-9), beta).matrix());
        },
        py::arg("a"), py::arg("b"), py::arg("beta"), "Weighted matrix geometric mean A #_beta B.");

  m.def("amplitude_damping_choi", [](double g) { return CMatrix(amplitude_damping(g).choi().matrix()); },
        py::arg("gamma"));
  m.def("depolarizing_choi", [](double p, int d) { return CMatrix(depolarizing(p, d).choi().matrix()); },
        py::arg("p"), py::arg("d") = 2);

  m.def(
      "d_sharp_channel",
      [](const CMatrix& jn, const CMatrix& jm, int dim_in, int dim_out, double alpha, int bits, bool both,
         double tol, int max_iter, int budget) {
        const auto r = d_sharp_channel(channel_from(jn, dim_in, dim_out), channel_from(jm, dim_in, dim_out),
                                       alpha, make_options(bits, both, tol, max_iter, budget));
        py::dict d;
        d["value"] = r.value_D;
        d["Q"] = r.value_Q;
        d["alpha_eff"] = r.alpha_eff;
        d["D_lo"] = r.D_lo;
        d["D_hi"] = r.D_hi;
        d["witness_ok"] = r.witness_ok;
        d["solver"] = solver_dict(r.solver);
        return d;
      },
      py::arg("choi_n"), py::arg("choi_m"), py::arg("dim_in"), py::arg("dim_out"), py::arg("alpha"),
      SHARP_ARGS, "D#_alpha(N || M) for CP maps given by Choi matrices on input (x) output.");

  m.def(
      "hierarchy_bound",
      [](const CMatrix& jn, const CMatrix& jm, int dim_in, int dim_out, double alpha, int order, int bits,
         bool both, double tol, int max_iter, int budget) {
        const auto hb = hierarchy_bound(channel_from(jn, dim_in, dim_out), channel_from(jm, dim_in, dim_out),
                                        alpha, order, make_options(bits, both, tol, max_iter, budget));
        py::dict d;
        d["m"] = hb.m;
        d["upper"] = hb.upper;
        d["lower"] = hb.lower;
        d["correction"] = hb.correction;
        return d;
      },
      py::arg("choi_n"), py::arg("choi_m"), py::arg("dim_in"), py::arg("dim_out"), py::arg("alpha"),
      py::arg("m"), SHARP_ARGS);

  m.def("diamond_norm",
        [](const CMatrix& j, int dim_in, int dim_out) {
          return diamond_norm(HermitianOperator(j, 1e-9), dim_in, dim_out);
        },
        py::arg("choi"), py::arg("dim_in"), py::arg("dim_out"));

  m.def(
      "capacity_bound",
      [](const CMatrix& jn, int dim_in, int dim_out, double alpha, int bits, bool both, double tol,
         int max_iter, int budget) {
        const auto cb = capacity_bound(channel_from(jn, dim_in, dim_out), alpha,
                                       make_options(bits, both, tol, max_iter, budget));
        py::dict d;
        d["value"] = cb.value;
        d["alpha_eff"] = cb.alpha_eff;
        d["minimizer_choi"] = CMatrix(cb.minimizer_choi.matrix());
        d["minimizer_diamond"] = cb.minimizer_diamond;
        d["solver"] = solver_dict(cb.solver);
        return d;
      },
      py::arg("choi_n"), py::arg("dim_in"), py::arg("dim_out"), py::arg("alpha"), SHARP_ARGS);

  m.def(
      "capacity_curve",
      [](const std::vector<double>& gammas, const std::vector<double>& alphas, int bits, int jobs) {
        SharpOptions o;
        o.bits = bits;
        o.both_brackets = false;
        std::vector<CapacityRow> rows;
        {
          py::gil_scoped_release release;
          rows = capacity_curve(gammas, alphas, o, {}, jobs);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["gamma"] = r.gamma;
          d["best_alpha"] = r.best_alpha;
          d["value"] = r.value;
          d["ok"] = r.ok;
          d["failed_cells"] = r.failed_cells;
          out.append(d);
        }
        return out;
      },
      py::arg("gammas"), py::arg("alphas"), py::arg("bits") = kDefaultDyadicLevel, py::arg("jobs") = 1,
      "Capacity bound of the amplitude-damping family minimized over the alpha grid.");
}
