// phaseonly: command-line front end for the phase-only reconstruction toolkit.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "phaseonly/designs.hpp"
#include "phaseonly/discriminant.hpp"
#include "phaseonly/error.hpp"
#include "phaseonly/experiments.hpp"
#include "phaseonly/json_io.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/selection.hpp"
#include "phaseonly/solver.hpp"

using namespace phaseonly;

namespace {

int report_error(const char* code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << '\n';
  return 2;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(path, text);
  }
}

// A matrix file holds either a bare matrix or {"A": matrix, "b": vector}.
MeasurementEnsemble load_ensemble(const std::string& path, const std::string& offset_path) {
  const Json j = read_json_file(path);
  MeasurementEnsemble e;
  if (j.is_object() && j.contains("A")) {
    e.a = matrix_from_json(j.at("A"));
    if (j.contains("b") && !j.at("b").is_null()) e.offset = vector_from_json(j.at("b"));
  } else {
    e.a = matrix_from_json(j);
  }
  if (!offset_path.empty()) e.offset = vector_from_json(read_json_file(offset_path));
  if (e.offset && e.offset->size() != e.a.rows())
    fail(ErrorCode::DimensionMismatch, "offset length does not match the number of rows");
  return e;
}

Signal load_signal(const std::string& path, std::size_t d) {
  Signal x = vector_from_json(read_json_file(path));
  if (x.size() != d)
    fail(ErrorCode::DimensionMismatch,
         "signal has " + std::to_string(x.size()) + " entries, matrix has " + std::to_string(d) +
             " columns");
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-only signal reconstruction toolkit"};
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);

  std::string matrix_path, signal_path, offset_path, obs_path, spec_path, cfg_path, report_path;
  std::string out_path, csv_path, criterion = "D";
  bool affine = false, real_signal = false;
  std::size_t threads = 0;

  auto* analyze = app.add_subcommand("analyze", "Decide recoverability of a signal");
  analyze->add_option("matrix", matrix_path, "Matrix JSON (or {A, b} ensemble)")->required();
  analyze->add_option("signal", signal_path, "Signal JSON")->required();
  analyze->add_option("--offset", offset_path, "Offset vector JSON");
  analyze->add_flag("--affine", affine, "Use the affine model");
  analyze->add_flag("--real-signal", real_signal, "Restrict to real signals");
  analyze->add_option("--criterion", criterion, "D (any A) or E (canonical A)")
      ->check(CLI::IsMember({"D", "E"}));
  analyze->add_option("-o,--out", out_path, "Output path");

  auto* solve = app.add_subcommand("solve", "Reconstruct a signal from measurement phases");
  solve->add_option("matrix", matrix_path, "Matrix JSON (or {A, b} ensemble)")->required();
  solve->add_option("observation", obs_path, "Phase vector JSON")->required();
  solve->add_option("--offset", offset_path, "Offset vector JSON");
  solve->add_option("-o,--out", out_path, "Output path");

  auto* measure = app.add_subcommand("measure", "Compute the phase observation of a signal");
  measure->add_option("matrix", matrix_path, "Matrix JSON (or {A, b} ensemble)")->required();
  measure->add_option("signal", signal_path, "Signal JSON")->required();
  measure->add_option("--offset", offset_path, "Offset vector JSON");
  measure->add_option("-o,--out", out_path, "Output path");

  auto* design = app.add_subcommand("design", "Build a measurement design");
  design->add_option("spec", spec_path, "DesignSpec JSON")->required();
  design->add_option("-o,--out", out_path, "Output path");

  auto* select = app.add_subcommand("select", "Select a minimal recovering row subset");
  select->add_option("matrix", matrix_path, "Matrix JSON (or {A, b} ensemble)")->required();
  select->add_option("signal", signal_path, "Signal JSON")->required();
  select->add_option("--offset", offset_path, "Offset vector JSON");
  select->add_option("-o,--out", out_path, "Output path");

  auto* experiment = app.add_subcommand("experiment", "Run a seeded Monte Carlo experiment");
  experiment->add_option("config", cfg_path, "Experiment config JSON")->required();
  experiment->add_option("-o,--out", out_path, "Report path (overrides config output)");
  experiment->add_option("--csv", csv_path, "Also write the CSV table here");
  experiment->add_option("--threads", threads, "Worker threads (0 = PHASEONLY_THREADS or all)");

  auto* plot = app.add_subcommand("plot", "Render recoverability curves as SVG");
  plot->add_option("report", report_path, "Experiment report JSON")->required();
  plot->add_option("-o,--out", out_path, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what());
  }

  try {
    if (*analyze) {
      const MeasurementEnsemble e = load_ensemble(matrix_path, offset_path);
      const Signal x = load_signal(signal_path, e.dim());
      Verdict v;
      if (affine || e.affine()) {
        if (!e.affine()) fail(ErrorCode::InvalidArgument, "--affine needs an offset vector");
        v = criterion == "E" ? verdict_affine_E(e, x) : verdict_affine_D(e, x);
      } else if (real_signal) {
        v = criterion == "E" ? verdict_real_E(e.a, x) : verdict_real_D(e.a, x);
      } else {
        v = criterion == "E" ? verdict_canonical(e.a, x) : verdict_linear(e.a, x);
      }
      emit(verdict_to_json(v).dump(2), out_path);
    } else if (*solve) {
      const MeasurementEnsemble e = load_ensemble(matrix_path, offset_path);
      const ComplexVector values = vector_from_json(read_json_file(obs_path));
      if (values.size() != e.rows())
        fail(ErrorCode::DimensionMismatch, "observation length does not match the number of rows");
      const PhaseObservation obs = PhaseObservation::from_values(values);
      const ReconstructionResult r = e.affine() ? solve_affine(e, obs) : solve_linear(e.a, obs);
      emit(reconstruction_to_json(r).dump(2), out_path);
    } else if (*measure) {
      const MeasurementEnsemble e = load_ensemble(matrix_path, offset_path);
      const Signal x = load_signal(signal_path, e.dim());
      emit(vector_to_json(phase_vector(e.measure(x)).values).dump(2), out_path);
    } else if (*design) {
      const MeasurementEnsemble e = build_design(design_spec_from_json(read_json_file(spec_path)));
      const Json j = e.affine() ? Json{{"A", matrix_to_json(e.a)}, {"b", vector_to_json(*e.offset)}}
                                : matrix_to_json(e.a);
      emit(j.dump(2), out_path);
    } else if (*select) {
      const MeasurementEnsemble e = load_ensemble(matrix_path, offset_path);
      const Signal x = load_signal(signal_path, e.dim());
      const SelectionResult s = e.affine() ? select_rows_affine(e, x) : select_rows_linear(e.a, x);
      emit(selection_to_json(s).dump(2), out_path);
    } else if (*experiment) {
      const ExperimentConfig cfg = config_from_json(read_json_file(cfg_path));
      const ExperimentReport rep = run_experiment(cfg, threads);
      const std::string path = out_path.empty() ? cfg.output : out_path;
      emit(report_to_json(rep).dump(2) + "\n", path);
      if (!csv_path.empty()) write_text_file(csv_path, report_to_csv(rep));
    } else if (*plot) {
      write_text_file(out_path, render_svg(read_json_file(report_path)));
    }
  } catch (const Error& e) {
    std::cerr << Json{{"error", e.code_name()}, {"message", e.what()}}.dump() << '\n';
    const bool io = e.code() == ErrorCode::IoError || e.code() == ErrorCode::ParseError;
    return io ? 2 : 1;
  } catch (const Json::exception& e) {
    return report_error("ParseError", e.what());
  }
  return 0;
}
