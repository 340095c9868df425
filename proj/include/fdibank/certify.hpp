#pragma once

#include <cstdint>
#include <filesystem>
#include <map>

#include "fdibank/model.hpp"
#include "fdibank/observer.hpp"

namespace fdi::certify {

/// Empirical ISS certificate for one observer: the attack-free error obeys
///   |e(k)| <= c * lambda^k * |e(0)| + gamma * ||m~_J||_k
/// where ||.||_k is the running sup of the componentwise noise magnitude.
/// k_star is the first step at which the transient term is below epsilon for
/// every |e(0)| within init_error_radius.
struct IssCertificate {
  double c = 1.0;
  double lambda = 0.5;
  double gamma = 0.0;
  double epsilon = 0.0;
  double init_error_radius = 0.0;
  int k_star = 0;

  // audit fields
  std::uint64_t master_seed = 0;
  int trials = 0;
  int horizon = 0;
  double safety_factor = 1.0;

  void validate(const std::string& subset_key) const;
};

struct CertifyConfig {
  int trials = 200;             // Monte-Carlo rollouts per phase
  int horizon = 600;            // steps per rollout
  double epsilon = 0.0;         // transient tolerance for thresholds
  double safety_factor = 1.2;   // multiplies the raw gamma estimate
  double fit_radius = 1.0;      // |e(0)| ball for the noiseless envelope fit
  double init_error_radius = 0.0;  // |e(0)| ball the certificate covers
  int validation_trials = 100;  // fresh rollouts for the soundness check
  double max_lambda = 0.9999;   // fit above this is "no geometric envelope"
  double max_violation_fraction = 0.01;  // Eq-(5)-style soundness budget
  std::uint64_t master_seed = 0;
};

/// Monte-Carlo ISS certification of one observer on the attack-free system.
/// Noiseless rollouts fit (c, lambda) as a decay envelope; noisy rollouts
/// estimate gamma as the post-settling ratio of suprema, inflated by the
/// safety factor; fresh rollouts then validate the assembled bound.
/// Throws CertificationError (naming the subset) on divergence, a fit with
/// lambda >= max_lambda, a horizon too short to settle, or a validation
/// violation fraction above budget.
IssCertificate estimate_certificate(const observer::ObserverSpec& spec,
                                    const model::PlantModel& model,
                                    const model::NoiseModel& noise,
                                    const CertifyConfig& cfg,
                                    const model::InitPolicy& x0_policy,
                                    const model::InputSignal& input);

/// Fraction of (trial, step) samples violating the certificate bound on
/// fresh attack-free rollouts.
double validate_certificate(const observer::ObserverSpec& spec,
                            const model::PlantModel& model,
                            const model::NoiseModel& noise, const CertifyConfig& cfg,
                            const model::InitPolicy& x0_policy,
                            const model::InputSignal& input, const IssCertificate& cert);

using CertificateTable = std::map<SensorSet, IssCertificate>;

/// Certify every bank member. Trials derive from the master seed per subset,
/// so the result does not depend on member order.
CertificateTable certify_bank(const observer::ObserverBank& bank,
                              const model::PlantModel& model,
                              const model::NoiseModel& noise, const CertifyConfig& cfg,
                              const model::InitPolicy& x0_policy,
                              const model::InputSignal& input);

/// Detection threshold z_bar = 2(eps + gamma_bar m_bar), per-subset isolation
/// thresholds z_bar_J = 2(eps + gamma'_J m_bar), and the window start offsets
/// k_star_detect / k_star_isolate.
struct ThresholdSet {
  double z_bar = 0.0;
  double gamma_bar = 0.0;
  std::map<SensorSet, double> z_bar_J;
  std::map<SensorSet, double> gamma_prime_J;
  int k_star_detect = 0;
  int k_star_isolate = 0;
};

/// Assemble thresholds from a certificate table covering the full set, every
/// cardinality p-q subset and every cardinality p-2q subset. (p, q) are
/// inferred from the table; gaps throw ConfigError.
ThresholdSet compute_thresholds(const CertificateTable& certs, double m_bar,
                                double epsilon);

/// Certificate file I/O (JSON; records seeds and estimator settings).
void save_certificates(const std::filesystem::path& path, const CertificateTable& certs,
                       const CertifyConfig& cfg, double m_bar, double tau);
struct LoadedCertificates {
  CertificateTable certs;
  CertifyConfig cfg;
  double m_bar = 0.0;
  double tau = 1.0;
};
LoadedCertificates load_certificates(const std::filesystem::path& path);

}  // namespace fdi::certify
