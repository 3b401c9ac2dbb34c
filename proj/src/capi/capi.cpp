// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// C binding: translates between the flat C structs of chdet.h and the C++
// core, and maps exceptions onto status codes with a thread-local message.

#include "chdet/chdet.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/design.hpp"
#include "core/errors.hpp"
#include "core/exponents.hpp"
#include "core/correlator.hpp"
#include "core/noise.hpp"
#include "core/simulate.hpp"
#include "core/types.hpp"

struct chdet_noise {
  chdet::NoiseModel model;
};

namespace {

thread_local std::string g_last_error;

chdet_status status_from(const chdet::Error& e) {
  switch (e.code()) {
    case chdet::ErrorCode::domain_violation:
      return CHDET_ERR_DOMAIN;
    case chdet::ErrorCode::overflow_range:
      return CHDET_ERR_OVERFLOW;
    case chdet::ErrorCode::out_of_range:
      return CHDET_ERR_OUT_OF_RANGE;
    case chdet::ErrorCode::infeasible:
      return CHDET_ERR_INFEASIBLE;
    case chdet::ErrorCode::invalid_arrangement:
      return CHDET_ERR_ARRANGEMENT;
    case chdet::ErrorCode::invalid_argument:
      return CHDET_ERR_INVALID_ARGUMENT;
  }
  return CHDET_ERR_INTERNAL;
}

// Runs `fn`, converting exceptions to status codes.  Outputs must only be
// written inside `fn` after all throwing work is done.
template <typename Fn>
chdet_status guarded(Fn&& fn) {
  try {
    fn();
    return CHDET_OK;
  } catch (const chdet::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CHDET_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CHDET_ERR_INTERNAL;
  }
}

chdet_status invalid(const char* message) {
  g_last_error = message;
  return CHDET_ERR_INVALID_ARGUMENT;
}

chdet::DetectorSpec to_spec(const chdet_design& d) {
  std::vector<chdet::Atom> atoms;
  atoms.reserve(d.n_atoms);
  for (size_t i = 0; i < d.n_atoms; ++i)
    atoms.push_back({d.atoms[i].w, d.atoms[i].s, d.atoms[i].prob});
  chdet::DetectorSpec spec;
  spec.pmf = chdet::DiscreteJointPMF(std::move(atoms));
  spec.gamma = d.gamma;
  spec.theta = d.theta;
  return spec;
}

void from_spec(const chdet::DetectorSpec& spec, chdet_design* out) {
  const auto& atoms = spec.pmf.atoms();
  if (atoms.size() > CHDET_MAX_ATOMS)
    throw chdet::InvalidArgumentError(
        "design has more atoms than the C interface can carry");
  std::memset(out, 0, sizeof(*out));
  out->n_atoms = atoms.size();
  for (size_t i = 0; i < atoms.size(); ++i) {
    out->atoms[i].w = atoms[i].w;
    out->atoms[i].s = atoms[i].s;
    out->atoms[i].prob = atoms[i].prob;
  }
  out->gamma = spec.gamma;
  out->theta = spec.theta;
}

void from_point(const chdet::ExponentPoint& pt, chdet_point* out) {
  out->e0 = pt.e0;
  out->e_fa = pt.e_fa;
  out->e_md = pt.e_md;
  out->alpha_star = pt.alpha_star;
  out->lambda_star = pt.lambda_star;
  out->gamma_star = pt.gamma_star;
  out->theta_star = pt.theta_star;
}

chdet_status make_noise(chdet::NoiseModel model, chdet_noise** out) {
  *out = new chdet_noise{std::move(model)};
  return CHDET_OK;
}

}  // namespace

extern "C" {

const char* chdet_version(void) { return "1.0.0"; }

const char* chdet_last_error(void) { return g_last_error.c_str(); }

chdet_status chdet_noise_gaussian(double variance, chdet_noise** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    make_noise(chdet::NoiseModel::gaussian(variance), out);
  });
}

chdet_status chdet_noise_laplace(double scale_q, chdet_noise** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    make_noise(chdet::NoiseModel::laplace(scale_q), out);
  });
}

chdet_status chdet_noise_uniform(double half_width, chdet_noise** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    make_noise(chdet::NoiseModel::uniform(half_width), out);
  });
}

chdet_status chdet_noise_binary(double magnitude, chdet_noise** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    make_noise(chdet::NoiseModel::binary_symmetric(magnitude), out);
  });
}

chdet_status chdet_noise_sum(const chdet_noise* left,
                             const chdet_noise* right, chdet_noise** out) {
  if (!left || !right) return invalid("null noise operand");
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    make_noise(chdet::NoiseModel::sum(left->model, right->model), out);
  });
}

void chdet_noise_free(chdet_noise* noise) { delete noise; }

chdet_status chdet_noise_cgf(const chdet_noise* noise, double v,
                             double* out) {
  if (!noise || !out) return invalid("null pointer argument");
  return guarded([&] { *out = noise->model.cgf(v); });
}

chdet_status chdet_noise_joint_cgf(const chdet_noise* noise, double x,
                                   double y, double* out) {
  if (!noise || !out) return invalid("null pointer argument");
  return guarded([&] { *out = noise->model.joint_cgf(x, y); });
}

chdet_status chdet_noise_variance(const chdet_noise* noise, double* out) {
  if (!noise || !out) return invalid("null pointer argument");
  return guarded([&] { *out = noise->model.variance(); });
}

chdet_status chdet_threshold_for_budget(const chdet_design* design,
                                        const chdet_noise* noise_n,
                                        double e0, double* theta,
                                        double* alpha_star) {
  if (!design || !noise_n || !theta) return invalid("null pointer argument");
  return guarded([&] {
    const chdet::DetectorSpec spec = to_spec(*design);
    const chdet::SupResult r =
        chdet::theta_for_e0(spec.pmf, spec.gamma, noise_n->model, e0);
    *theta = r.value;
    if (alpha_star) *alpha_star = r.arg;
  });
}

chdet_status chdet_evaluate(const chdet_design* design,
                            const chdet_noise* noise_v,
                            const chdet_noise* noise_n, chdet_point* out) {
  if (!design || !noise_v || !noise_n || !out)
    return invalid("null pointer argument");
  return guarded([&] {
    const chdet::DetectorSpec spec = to_spec(*design);
    const chdet::SupResult fa = chdet::efa(spec, noise_n->model);
    const chdet::SupResult md = chdet::emd(spec, noise_v->model);
    chdet_point pt;
    pt.e0 = fa.value;
    pt.e_fa = fa.value;
    pt.e_md = md.value;
    pt.alpha_star = fa.arg;
    pt.lambda_star = md.arg;
    pt.gamma_star = spec.gamma;
    pt.theta_star = spec.theta;
    *out = pt;
  });
}

chdet_status chdet_optimal_weights(const chdet_atom* signal_atoms,
                                   size_t n_atoms, double gamma, double e0,
                                   const chdet_noise* noise_v,
                                   const chdet_noise* noise_n,
                                   chdet_design* out, chdet_point* point) {
  if (!signal_atoms || !noise_v || !noise_n || !out)
    return invalid("null pointer argument");
  if (n_atoms == 0 || n_atoms > CHDET_MAX_ATOMS)
    return invalid("atom count must be between 1 and CHDET_MAX_ATOMS");
  return guarded([&] {
    std::vector<chdet::Atom> atoms;
    atoms.reserve(n_atoms);
    for (size_t i = 0; i < n_atoms; ++i)
      atoms.push_back({0.0, signal_atoms[i].s, signal_atoms[i].prob});
    chdet::DiscreteJointPMF signal(std::move(atoms));
    const chdet::WeightsResult r = chdet::optimal_weights(
        signal, e0, gamma, noise_v->model, noise_n->model);
    from_spec(r.design, out);
    if (point) from_point(r.point, point);
  });
}

void chdet_config_defaults(chdet_curve_mode mode, chdet_config* out) {
  if (!out) return;
  out->q = 4.0;
  out->z0 = 7.0;
  out->B = 5.0;
  switch (mode) {
    case CHDET_CURVE_ENERGY_FIXED:
    case CHDET_CURVE_ENERGY_JOINT:
      out->a = 6.0;
      out->Ps = 16.0;
      break;
    default:
      out->a = 4.0;
      out->Ps = 80.0;
      break;
  }
}

chdet_status chdet_solve_point(chdet_curve_mode mode, double e0,
                               const chdet_config* config,
                               chdet_design* design, chdet_point* point) {
  if (!config) return invalid("null configuration");
  return guarded([&] {
    chdet::ExponentPoint pt;
    switch (mode) {
      case CHDET_CURVE_LINEAR_FIXED:
        pt = chdet::solve_example1(e0, config->a, config->q, config->z0,
                                   false);
        break;
      case CHDET_CURVE_CLASSICAL:
        pt = chdet::solve_example1(e0, config->a, config->q, config->z0,
                                   true);
        break;
      case CHDET_CURVE_LINEAR_JOINT: {
        const chdet::NoiseModel n = chdet::NoiseModel::laplace(config->q);
        const chdet::NoiseModel v = chdet::NoiseModel::sum(
            n, chdet::NoiseModel::binary_symmetric(config->z0));
        pt = chdet::solve_joint_linear(e0, config->Ps, v, n).point;
        break;
      }
      case CHDET_CURVE_ENERGY_FIXED:
        pt = chdet::solve_example3_energy(e0, config->a, config->B,
                                          config->z0);
        break;
      case CHDET_CURVE_ENERGY_JOINT: {
        const chdet::NoiseModel n = chdet::NoiseModel::uniform(config->B);
        const chdet::NoiseModel v = chdet::NoiseModel::sum(
            n, chdet::NoiseModel::binary_symmetric(config->z0));
        pt = chdet::solve_joint_energy(e0, config->Ps, v, n).point;
        break;
      }
      default:
        throw chdet::InvalidArgumentError("unknown curve mode");
    }
    if (design) from_spec(pt.design, design);
    if (point) from_point(pt, point);
  });
}

chdet_status chdet_threshold_point(double e0, double half_width,
                                   double* theta) {
  if (!theta) return invalid("null output pointer");
  return guarded([&] {
    const auto curve = chdet::threshold_curve({e0}, half_width);
    *theta = curve.front().second;
  });
}

chdet_status chdet_simulate(const chdet_design* design,
                            const chdet_noise* noise_v,
                            const chdet_noise* noise_n, uint64_t n,
                            uint64_t trials, uint64_t seed,
                            chdet_sim_report* out) {
  if (!design || !noise_v || !noise_n || !out)
    return invalid("null pointer argument");
  return guarded([&] {
    const chdet::DetectorSpec spec = to_spec(*design);
    const chdet::SimReport rep = chdet::simulate_design(
        spec, chdet::ExponentPoint{}, static_cast<std::size_t>(n),
        static_cast<std::size_t>(trials), noise_v->model, noise_n->model,
        seed);
    chdet_sim_report r;
    std::memset(&r, 0, sizeof(r));
    r.n = rep.n;
    r.trials = rep.trials;
    r.p_fa_hat = rep.p_fa_hat;
    r.p_fa_stderr = rep.p_fa_stderr;
    r.p_md_hat = rep.p_md_hat;
    r.p_md_stderr = rep.p_md_stderr;
    r.empirical_efa = rep.empirical_efa;
    r.empirical_emd = rep.empirical_emd;
    r.fa_insufficient_hits = rep.fa_insufficient_hits ? 1 : 0;
    r.md_insufficient_hits = rep.md_insufficient_hits ? 1 : 0;
    *out = r;
  });
}

}  // extern "C"
