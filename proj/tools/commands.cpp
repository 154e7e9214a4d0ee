#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdet/error.hpp"
#include "qdet/io.hpp"
#include "qdet/random.hpp"

namespace qdet::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

// Writes to --out (via a temporary file renamed into place, so a failed run
// never leaves a partial file) or to stdout.
void emit(const std::string& text, const CommonFlags& flags, Streams io) {
  if (!flags.out) {
    io.out << text;
    return;
  }
  fs::path tmp = *flags.out;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw Error(ErrorCode::ParseError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, *flags.out);
}

int guarded(Streams io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    io.err << "error: malformed JSON: " << e.what() << "\n";
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

StateSet load_states(const fs::path& p) { return io::state_set_from_json(io::read_json_file(p)); }

CoherenceTolerances coherence_tolerances(const CommonFlags& flags) {
  CoherenceTolerances t;
  t.purity = flags.purity_tol;
  t.base = flags.tol;
  return t;
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Sweep template entries: a number, an [re, im] pair, or an object
// {"const": z0, "cos": z1, "sin": z2} evaluating to z0 + z1 cos(t) + z2 sin(t).
Complex eval_entry(const Json& e, double t) {
  if (!e.is_object()) return io::complex_from_json(e);
  Complex z{0.0, 0.0};
  for (const auto& [key, val] : e.items()) {
    const Complex c = io::complex_from_json(val);
    if (key == "const") {
      z += c;
    } else if (key == "cos") {
      z += c * std::cos(t);
    } else if (key == "sin") {
      z += c * std::sin(t);
    } else {
      throw Error(ErrorCode::ParseError, "unknown template term \"" + key + "\"");
    }
  }
  return z;
}

StateSet eval_set(const Json& tmpl, double t) {
  if (!tmpl.is_object() || !tmpl.contains("dimension") || !tmpl.contains("states")) {
    throw Error(ErrorCode::ParseError, "template state sets need \"dimension\" and \"states\"");
  }
  const auto d = tmpl.at("dimension").get<Index>();
  const Json& states = tmpl.at("states");
  if (d < 1 || !states.is_array() || states.empty()) {
    throw Error(ErrorCode::ParseError, "template state set is empty");
  }
  ComplexMatrix amps(d, static_cast<Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!states[k].is_array() || static_cast<Index>(states[k].size()) != d) {
      throw Error(ErrorCode::DimensionMismatch, "template state has the wrong length");
    }
    for (std::size_t i = 0; i < states[k].size(); ++i) {
      amps(static_cast<Index>(i), static_cast<Index>(k)) = eval_entry(states[k][i], t);
    }
  }
  return StateSet::normalized(std::move(amps));
}

}  // namespace

std::vector<Complex> parse_coefficients(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      std::size_t used = 0;
      if (colon == std::string::npos) {
        const double re = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.emplace_back(re, 0.0);
      } else {
        const std::string rs = item.substr(0, colon);
        const std::string is = item.substr(colon + 1);
        std::size_t u2 = 0;
        const double re = std::stod(rs, &used);
        const double im = std::stod(is, &u2);
        if (used != rs.size() || u2 != is.size()) throw std::invalid_argument(item);
        out.emplace_back(re, im);
      }
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad coefficient \"" + item + "\"");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "no coefficients given");
  return out;
}

int cmd_check(const fs::path& initial, const fs::path& final_states, const CommonFlags& flags,
              Streams io) {
  return guarded(io, [&] {
    const StateSet s1 = load_states(initial);
    const StateSet s2 = load_states(final_states);
    const FeasibilityReport rep = feasibility_check(s1, s2, flags.tol);
    emit(io::dump(io::to_json(rep)), flags, io);
    switch (rep.verdict) {
      case Verdict::Feasible: return static_cast<int>(kSuccess);
      case Verdict::Infeasible: return static_cast<int>(kNegative);
      default: return static_cast<int>(kInconclusive);
    }
  });
}

int cmd_synth(const fs::path& initial, const fs::path& final_states, const CommonFlags& flags,
              Streams io) {
  return guarded(io, [&] {
    const StateSet s1 = load_states(initial);
    const StateSet s2 = load_states(final_states);
    const FeasibilityReport rep = feasibility_check(s1, s2, flags.tol);
    if (rep.verdict != Verdict::Feasible) {
      io.err << "not synthesizable: verdict " << to_string(rep.verdict) << "\n";
      return static_cast<int>(kNegative);
    }
    const KrausSet ks = synthesize(s1, s2, flags.tol);
    const auto records = transform_report(ks, s1, s2);
    double min_fid = 1.0;
    for (const auto& r : records) min_fid = std::min(min_fid, r.fidelity);

    Json j = io::to_json(ks);
    Json v;
    v["kraus_count"] = ks.size();
    v["completeness_residual"] = verify_completeness(ks);
    v["min_fidelity"] = min_fid;
    v["per_state"] = io::to_json(records);
    j["verification"] = std::move(v);
    emit(io::dump(j), flags, io);
    return static_cast<int>(kSuccess);
  });
}

int cmd_apply(const fs::path& kraus, const fs::path& state, const CommonFlags& flags, Streams io) {
  return guarded(io, [&] {
    const KrausSet ks = io::kraus_from_json(io::read_json_file(kraus));
    const Json input = io::read_json_file(state);
    auto result = [&](const DensityMatrix& rho) {
      const DensityMatrix out = apply_channel(ks, rho);
      Json j = io::to_json(out);
      j["purity"] = purity(out);
      return j;
    };
    Json doc;
    if (input.contains("states")) {
      const StateSet s = io::state_set_from_json(input);
      Json results = Json::array();
      for (Index k = 0; k < s.size(); ++k) {
        Json r;
        r["index"] = k;
        if (!s.labels().empty()) r["label"] = s.labels()[static_cast<std::size_t>(k)];
        const Json one = result(DensityMatrix::pure(s.state(k)));
        for (const auto& [key, val] : one.items()) r[key] = val;
        results.push_back(std::move(r));
      }
      doc["results"] = std::move(results);
    } else {
      doc = result(io::density_from_json(input));
    }
    emit(io::dump(doc), flags, io);
    return static_cast<int>(kSuccess);
  });
}

int cmd_coherence(const fs::path& initial, const fs::path& final_states, const std::string& coeffs,
                  const CommonFlags& flags, Streams io) {
  return guarded(io, [&] {
    const std::vector<Complex> q = parse_coefficients(coeffs);
    const StateSet s1 = load_states(initial);
    const StateSet s2 = load_states(final_states);
    const RoundtripRecord rec = purity_unitarity_roundtrip(s1, s2, q, coherence_tolerances(flags));
    emit(io::dump(io::to_json(rec)), flags, io);
    if (!rec.agree) {
      io.err << "warning: purity probe and unitary-relation test disagree\n";
      return static_cast<int>(kNegative);
    }
    return static_cast<int>(rec.relation.verdict == CoherenceVerdict::UnitaryRelated ? kSuccess
                                                                                     : kNegative);
  });
}

int cmd_sweep(const fs::path& tmpl_path, const SweepGrid& grid, const CommonFlags& flags,
              Streams io) {
  return guarded(io, [&] {
    if (grid.steps < 2) throw Error(ErrorCode::InvalidDimensions, "sweep needs --steps >= 2");
    const Json tmpl = io::read_json_file(tmpl_path);
    if (!tmpl.is_object() || !tmpl.contains("initial") || !tmpl.contains("final")) {
      throw Error(ErrorCode::ParseError, "template needs \"initial\" and \"final\" families");
    }
    std::string name = grid.parameter.empty() ? "theta" : grid.parameter;
    if (tmpl.contains("parameter")) {
      const auto declared = tmpl.at("parameter").get<std::string>();
      if (!grid.parameter.empty() && grid.parameter != declared) {
        throw Error(ErrorCode::ParseError, "template parameter is \"" + declared + "\", not \"" +
                                               grid.parameter + "\"");
      }
      name = declared;
    }
    std::vector<Complex> q;
    if (tmpl.contains("coefficients")) {
      const ComplexVector v = io::vector_from_json(tmpl.at("coefficients"));
      q.assign(v.data(), v.data() + v.size());
    }

    std::ostringstream csv;
    csv << name << ",min_eigenvalue,verdict,max_abs_mu,purity\n";
    for (int i = 0; i < grid.steps; ++i) {
      const double t = grid.start + (grid.stop - grid.start) * i / (grid.steps - 1);
      const StateSet s1 = eval_set(tmpl.at("initial"), t);
      const StateSet s2 = eval_set(tmpl.at("final"), t);
      const FeasibilityReport rep = feasibility_check(s1, s2, flags.tol);
      double p = std::numeric_limits<double>::quiet_NaN();
      if (rep.verdict == Verdict::Feasible) {
        const KrausSet ks = synthesize(s1, s2, flags.tol);
        const std::vector<Complex> coeffs =
            q.empty() ? std::vector<Complex>(static_cast<std::size_t>(s1.size()), 1.0) : q;
        p = purity(apply_channel(ks, DensityMatrix::pure(superpose(s1, coeffs).state)));
      }
      csv << fmt_double(t) << ',' << fmt_double(rep.min_eigenvalue) << ','
          << to_string(rep.verdict) << ',' << fmt_double(rep.max_abs_mu) << ',' << fmt_double(p)
          << '\n';
    }
    emit(csv.str(), flags, io);
    return static_cast<int>(kSuccess);
  });
}

int cmd_gen(const GenOptions& opts, const CommonFlags& flags, Streams io) {
  return guarded(io, [&] {
    GenerationMode mode;
    Index d = opts.dimension;
    Index n = opts.count;
    if (opts.mode == "generic") {
      mode = GenericMode{};
    } else if (opts.mode == "independent") {
      mode = IndependentMode{};
    } else if (opts.mode == "unitary") {
      if (!opts.base) throw Error(ErrorCode::InvalidDimensions, "unitary mode needs --base");
      StateSet base = load_states(*opts.base);
      if (d == 0) d = base.dimension();
      if (n == 0) n = base.size();
      mode = UnitaryImageMode{std::move(base)};
    } else {
      throw Error(ErrorCode::ParseError, "unknown mode \"" + opts.mode + "\"");
    }
    const StateSet s = random_state_set(d, n, opts.seed, mode);
    emit(io::dump(io::to_json(s)), flags, io);
    return static_cast<int>(kSuccess);
  });
}

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Deterministic pure-state transformations: feasibility, Kraus synthesis, coherence"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", flags.tol.psd, "relative PSD tolerance and vanishing-overlap cutoff")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rank-tol", flags.tol.rank, "relative eigenvalue cutoff for numerical rank")
        ->check(CLI::PositiveNumber);
    sub->add_option("--purity-tol", flags.purity_tol, "1 - Tr(rho^2) threshold for purity")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out,-o", out_path, "write output to this file instead of stdout");
  };

  std::string initial, final_states, kraus, state, tmpl, coeffs, base;
  SweepGrid grid;
  GenOptions gen;

  auto* check = app.add_subcommand("check", "decide whether INITIAL can be mapped onto FINAL");
  check->add_option("initial", initial)->required();
  check->add_option("final", final_states)->required();
  add_common(check);

  auto* synth = app.add_subcommand("synth", "build Kraus operators for a feasible transformation");
  synth->add_option("initial", initial)->required();
  synth->add_option("final", final_states)->required();
  add_common(synth);

  auto* apply = app.add_subcommand("apply", "apply a Kraus set to a state set or density matrix");
  apply->add_option("kraus", kraus)->required();
  apply->add_option("state", state)->required();
  add_common(apply);

  auto* coherence = app.add_subcommand("coherence", "probe superposition purity under the channel");
  coherence->add_option("initial", initial)->required();
  coherence->add_option("final", final_states)->required();
  coherence->add_option("--coeffs,-q", coeffs, "comma-separated coefficients, each re or re:im")
      ->required();
  add_common(coherence);

  auto* sweep = app.add_subcommand("sweep", "scan a one-parameter family and emit CSV");
  sweep->add_option("template", tmpl)->required();
  sweep->add_option("--param", grid.parameter, "parameter name declared by the template");
  sweep->add_option("--start", grid.start)->required();
  sweep->add_option("--stop", grid.stop)->required();
  sweep->add_option("--steps", grid.steps)->required()->check(CLI::Range(2, 10000000));
  add_common(sweep);

  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded random state set");
  gen_cmd->add_option("--dim,-d", gen.dimension)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--count,-n", gen.count)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--mode", gen.mode)
      ->check(CLI::IsMember({"generic", "independent", "unitary"}));
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--base", base, "base state set for unitary mode");
  add_common(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, io.out, io.err);
    return rc == 0 ? 0 : static_cast<int>(kInputError);
  }
  if (!out_path.empty()) flags.out = out_path;
  flags.tol.overlap = flags.tol.psd;

  if (*check) return cmd_check(initial, final_states, flags, io);
  if (*synth) return cmd_synth(initial, final_states, flags, io);
  if (*apply) return cmd_apply(kraus, state, flags, io);
  if (*coherence) return cmd_coherence(initial, final_states, coeffs, flags, io);
  if (*sweep) return cmd_sweep(tmpl, grid, flags, io);
  if (!base.empty()) gen.base = base;
  return cmd_gen(gen, flags, io);
}

}  // namespace qdet::cli
