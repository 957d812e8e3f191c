#pragma once

#include <string>
#include <vector>

#include "phaseonly/json_io.hpp"
#include "phaseonly/random.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

inline constexpr const char* kToolkitVersion = "1.0.0";

enum class ExperimentKind { Threshold, SymmetricFourier, MaEquivalence, Consistency };
enum class Model { Linear, Affine };

struct ExperimentConfig {
  std::string name = "experiment";
  ExperimentKind kind = ExperimentKind::Threshold;
  Model model = Model::Linear;
  std::vector<std::size_t> dims;
  // Absolute counts ("7") or expressions in d ("2d-1", "d", "4d-2").
  std::vector<std::string> measurement_counts;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  Tolerance tol;
  std::string output;
  bool record_timing = false;
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);
std::size_t resolve_count(const std::string& expr, std::size_t d);

struct CellRecord {
  std::string arm;  // empty for single-arm experiments
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t recoverable_count = 0;
  std::size_t solver_roundtrip_count = 0;
  std::size_t solver_disagreements = 0;
  double mean_solution_dim = 0.0;
  double wall_time = 0.0;
  Json extra = Json::object();
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellRecord> cells;
  Json summary = Json::object();
};

Json report_to_json(const ExperimentReport& r);
// d,m,trials,recoverable,roundtrip,mean_solution_dim,seconds for the primary arm.
std::string report_to_csv(const ExperimentReport& r);

ExperimentReport run_threshold_experiment(const ExperimentConfig& c, std::size_t threads = 0);
ExperimentReport run_symmetric_fourier_experiment(const ExperimentConfig& c,
                                                  std::size_t threads = 0);
ExperimentReport run_ma_equivalence_experiment(const ExperimentConfig& c,
                                               std::size_t threads = 0);
ExperimentReport run_experiment(const ExperimentConfig& c, std::size_t threads = 0);

// Conjugate-symmetric x of length 2d-1 in the column order of design_fourier_symmetric.
Signal random_symmetric_signal(std::size_t d, Rng& rng);
// Symmetric x annihilated by the symmetric Fourier rows at the given frequencies.
Signal planted_symmetric_signal(const RealVector& zero_frequencies, std::size_t d,
                                const Tolerance& tol = {});
// x = g * (1, c, 1) with |c| > 2, so B(x) is singular while no Fourier sample vanishes.
RealVector singular_ma_signal(std::size_t d, Rng& rng);

std::string render_svg(const Json& report);

}  // namespace phaseonly
