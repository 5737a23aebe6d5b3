// expander-ec: build expander codes, run erasure channels and decoders,
// compare against the elimination oracle and time the fast list decoder.
//
// Exit codes: 0 success, 1 decode failure (or a status differing from
// --expect), 2 usage or input errors.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eec/io.hpp"
#include "eec/list_decode.hpp"
#include "eec/rng.hpp"
#include "eec/unique_decode.hpp"
#include "experiment.hpp"

using nlohmann::json;
using namespace eec;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  cli::ExperimentSpec spec;
  std::string spec_file;
  std::string save_spec;
  std::string lambda = "auto";
  std::string expect;
  std::string code_out;
  std::string codeword_out;
  std::vector<std::size_t> sizes = {1024, 2048, 4096, 8192};
  std::size_t degree = 8;
  std::size_t reps = 3;
};

// Independent streams for the codeword and the channel.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) { return SplitMix64(seed ^ (stream * 0xA24BAED4963EE407ULL))(); }

std::size_t threads_from_env() {
  if (const char* v = std::getenv("EXPANDER_EC_THREADS")) {
    try {
      const auto n = std::stoul(v);
      return n == 0 ? 1 : n;
    } catch (const std::exception&) {
      throw UsageError("EXPANDER_EC_THREADS must be a positive integer");
    }
  }
  return 1;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

struct Setup {
  io::GraphInstance graph;
  ExpanderCode code;
  std::optional<double> lambda;
};

std::optional<double> resolve_lambda(const io::GraphInstance& g, const std::string& mode) {
  if (mode == "none") return std::nullopt;
  if (mode != "auto") {
    try {
      return std::stod(mode);
    } catch (const std::exception&) {
      throw UsageError("--lambda expects auto, none or a number");
    }
  }
  SpectralOptions opt;
  opt.max_iterations = 5000;
  try {
    return g.base ? expansion_lambda(*g.base, opt).value : bipartite_lambda(g.graph, opt).value;
  } catch (const LambdaEstimationError&) {
    return std::nullopt;
  }
}

Setup make_setup(const Options& o) {
  if (o.spec.graph.empty()) throw UsageError("--graph is required");
  if (o.spec.code.empty()) throw UsageError("--code is required");
  auto g = io::make_graph(o.spec.graph, o.spec.seed);
  ExpanderCode code(g.graph, io::make_code(o.spec.code, o.spec.seed));
  auto lambda = resolve_lambda(g, o.lambda);
  return Setup{std::move(g), std::move(code), lambda};
}

DecoderParams decoder_params(const Options& o, const Setup& s) {
  DecoderParams p;
  p.r = o.spec.r;
  p.epsilon = Rational::parse(o.spec.epsilon);
  p.s_cap = o.spec.s_cap;
  p.lambda = s.lambda;
  p.threads = threads_from_env();
  return p;
}

BitVector read_full_word(const std::string& path, std::size_t n) {
  const auto w = io::parse_word(io::read_file(path));
  if (w.size() != n) throw UsageError("word in '" + path + "' has the wrong length");
  if (w.erasure_count() != 0) throw UsageError("codeword in '" + path + "' contains erasures");
  return w.values();
}

// The sent codeword and the received word described by the channel flags.
std::pair<BitVector, ErasedWord> run_channel(const Options& o, const ExpanderCode& code, const std::string& codeword_in) {
  const BitVector c = codeword_in.empty() ? code.sample_codeword(stream_seed(o.spec.seed, 1))
                                          : read_full_word(codeword_in, code.block_length());
  const int chosen = (o.spec.erasures ? 1 : 0) + (o.spec.rate ? 1 : 0) + (o.spec.pattern.empty() ? 0 : 1);
  if (chosen > 1) throw UsageError("--erasures, --rate and --pattern are mutually exclusive");
  const std::uint64_t ch = stream_seed(o.spec.seed, 2);
  if (o.spec.rate) return {c, code.erase_rate(c, *o.spec.rate, ch)};
  if (!o.spec.pattern.empty()) {
    std::istringstream in(io::read_file(o.spec.pattern));
    return {c, code.erase_explicit(c, io::parse_pattern(in))};
  }
  return {c, code.erase_count(c, o.spec.erasures.value_or(0), ch)};
}

ErasedWord received_word(const Options& o, const Setup& s) {
  if (!o.spec.input.empty()) {
    auto z = io::parse_word(io::read_file(o.spec.input));
    if (z.size() != s.code.block_length()) throw UsageError("received word has the wrong length");
    return z;
  }
  return run_channel(o, s.code, "").second;
}

json thresholds_json(const DerivedThresholds& t) {
  return json{{"delta", t.delta.to_string()},
              {"delta_r", t.delta_r.to_string()},
              {"heavy", t.heavy.to_string()},
              {"class_count_bound", t.class_count_bound.to_string()},
              {"class_size_bound", t.class_size_bound.to_string()},
              {"erasure_budget", t.erasure_budget.to_string()},
              {"regime_ratio", t.regime_ratio.to_string()}};
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json report_json(const DecodeReport& r) {
  return json{{"status", to_string(r.status)},
              {"erasures", r.erasures},
              {"regime", r.regime},
              {"within_budget", r.within_budget},
              {"bad", r.bad},
              {"e_prime", r.e_prime},
              {"b_prime", r.b_prime},
              {"e_b_prime", r.e_b_prime},
              {"s_actual", r.s_actual},
              {"a_unrestricted", r.a_unrestricted},
              {"a", r.a},
              {"smallest_class", r.smallest_class},
              {"frontier", r.frontier},
              {"inner_decodes", r.inner_decodes},
              {"advice_rejected", r.advice_rejected},
              {"thresholds", thresholds_json(r.thresholds)},
              {"class_size_ok", opt_bool(r.class_size_ok)},
              {"class_count_ok", opt_bool(r.class_count_ok)},
              {"e_b_prime_ok", opt_bool(r.e_b_prime_ok)},
              {"list_dimension_ok", opt_bool(r.list_dimension_ok)},
              {"timings", r.timings}};
}

std::string to_string(UniqueStatus s) {
  switch (s) {
    case UniqueStatus::Complete: return "complete";
    case UniqueStatus::Stuck: return "stuck";
    case UniqueStatus::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

json unique_report(const UniqueDecodeResult& r, std::size_t erasures, double seconds) {
  return json{{"status", to_string(r.status)},
              {"erasures", erasures},
              {"frontier", r.schedule.frontier},
              {"solving_rounds", r.schedule.solving_rounds()},
              {"inner_decodes", r.schedule.inner_decodes},
              {"stuck_frontier", r.schedule.stuck_frontier},
              {"timings", {{"decode", seconds}}}};
}

std::string format_words(const std::vector<BitVector>& words, std::size_t n) {
  std::ostringstream out;
  out << "words " << words.size() << ' ' << n << '\n';
  for (const auto& w : words) out << w.to_string() << '\n';
  return out.str();
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Outcome of one decoder run, normalized for decode and verify.
struct Outcome {
  std::string status;
  bool ok = false;
  std::string output;
  json report;
  /// Set when the decoder produced a list (or a unique word).
  std::optional<AffineSpace> space;
  std::optional<std::vector<BitVector>> words;
};

Outcome run_decoder(const Options& o, const Setup& s, const ErasedWord& z) {
  const auto& alg = o.spec.alg;
  const std::size_t n = s.code.block_length();
  Outcome out;
  if (alg == "unique") {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = unique_decode(s.code, z);
    out.report = unique_report(r, z.erasure_count(), elapsed(t0));
    out.status = to_string(r.status);
    out.ok = r.status == UniqueStatus::Complete;
    if (out.ok) {
      out.output = io::format_word(r.codeword);
      out.space = AffineSpace::point(r.codeword);
    }
    return out;
  }
  if (alg == "oracle") {
    const auto t0 = std::chrono::steady_clock::now();
    auto space = s.code.oracle_list_decode(z);
    out.report = json{{"status", space.is_empty() ? "empty_list" : "ok"},
                      {"erasures", z.erasure_count()},
                      {"a", space.is_empty() ? json(nullptr) : json(space.dimension())},
                      {"timings", {{"oracle", elapsed(t0)}}}};
    out.status = space.is_empty() ? "empty_list" : "ok";
    out.ok = !space.is_empty();
    if (out.ok) out.output = io::format_list(ListDescription::from_affine(space));
    out.space = std::move(space);
    return out;
  }
  const DecoderParams p = decoder_params(o, s);
  if (alg == "list-fast") {
    auto r = list_decode_fast(s.code, z, p);
    out.report = report_json(r.report);
    out.status = to_string(r.status);
    out.ok = r.status == ListStatus::Ok;
    if (out.ok) {
      out.output = io::format_list(r.list);
      out.space = r.list.to_affine();
    } else if (r.status != ListStatus::Stuck) {
      out.space = AffineSpace::empty_set(n);
    }
    if (!r.report.within_budget)
      std::cerr << "warning: " << r.report.erasures << " erasures exceed the budget "
                << r.report.thresholds.erasure_budget << "; guarantees do not apply\n";
    return out;
  }
  if (alg == "list-slow") {
    SlowDecodeResult r;
    try {
      r = list_decode_slow(s.code, z, p);
    } catch (const AdviceTooLarge& e) {
      out.status = "advice_too_large";
      out.report = json{{"status", out.status}, {"s_actual", e.classes()}, {"s_cap", p.s_cap}};
      return out;
    }
    out.report = report_json(r.report);
    out.status = to_string(r.status);
    out.ok = r.status == ListStatus::Ok;
    if (r.status != ListStatus::Stuck) {
      out.output = format_words(r.words, n);
      out.words = r.words;
    }
    if (!r.report.within_budget)
      std::cerr << "warning: " << r.report.erasures << " erasures exceed the budget "
                << r.report.thresholds.erasure_budget << "; guarantees do not apply\n";
    return out;
  }
  throw UsageError("--alg must be one of unique, list-slow, list-fast, oracle");
}

int finish_status(const Options& o, const Outcome& out) {
  if (!o.expect.empty()) return out.status == o.expect ? 0 : 1;
  return out.ok ? 0 : 1;
}

// ---------------------------------------------------------------- commands

int cmd_gen(const Options& o) {
  if (o.spec.graph.empty() && o.spec.code.empty()) throw UsageError("gen needs --graph and/or --code");
  if (!o.spec.graph.empty()) {
    const auto g = io::make_graph(o.spec.graph, o.spec.seed);
    emit(o.spec.out, g.base ? io::format_regular(*g.base) : io::format_bipartite(g.graph));
  }
  if (!o.spec.code.empty()) {
    const auto c = io::make_code(o.spec.code, o.spec.seed);
    emit(o.spec.graph.empty() ? o.spec.out : o.code_out, io::format_generator(c));
  }
  return 0;
}

int cmd_build(const Options& o) {
  const Setup s = make_setup(o);
  const auto& c0 = s.code.inner();
  const Rational rate(static_cast<std::int64_t>(s.code.dimension()), static_cast<std::int64_t>(s.code.block_length()));
  json j{{"graph", o.spec.graph},
         {"code", c0.name()},
         {"n", s.code.side_size()},
         {"d", s.code.degree()},
         {"N", s.code.block_length()},
         {"k0", c0.dimension()},
         {"delta", c0.min_distance().to_string()},
         {"dimension", s.code.dimension()},
         {"rate", rate.to_string()},
         {"rate_lower_bound", (Rational(2) * c0.rate() - Rational(1)).to_string()},
         {"components", s.code.graph().component_count()},
         {"lambda", s.lambda ? json(*s.lambda) : json(nullptr)}};
  if (s.lambda) {
    const double delta = c0.min_distance().to_double();
    j["distance_lower_bound"] = delta * (delta - *s.lambda / static_cast<double>(s.code.degree()));
  }
  if (!o.spec.out.empty()) io::write_file(o.spec.out, io::format_word(s.code.sample_codeword(stream_seed(o.spec.seed, 1))));
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_analyze(const Options& o) {
  const Setup s = make_setup(o);
  const auto& c0 = s.code.inner();
  const Rational eps = Rational::parse(o.spec.epsilon);
  const Rational d(static_cast<std::int64_t>(s.code.degree()));
  json j{{"graph", o.spec.graph}, {"code", c0.name()}, {"N", s.code.block_length()},
         {"lambda", s.lambda ? json(*s.lambda) : json(nullptr)}};
  json hierarchy = json::array();
  if (c0.length() <= LinearCode::kMaxLengthForGeneralized)
    for (std::size_t r = 1; r <= c0.dimension(); ++r) hierarchy.push_back(c0.generalized_distance(r).to_string());
  j["inner_generalized_distances"] = hierarchy;
  if (s.lambda) {
    const Rational lambda = approximate_rational(*s.lambda);
    const auto g = max_guaranteed_erasures(s.code, lambda, eps);
    j["unique_guarantee"] = {{"erasures", g.count}, {"hypothesis_holds", g.hypothesis_holds}};
  }
  DecoderParams p = decoder_params(o, s);
  if (p.r >= 1 && p.r <= c0.dimension()) {
    j["thresholds"] = thresholds_json(derive_thresholds(s.code, p));
    j["regime"] = in_regime(s.code, p);
  }
  // Second generalized distance of C against (1 - eps) delta min{delta_2, 2 delta}.
  if (c0.dimension() >= 2 && s.code.dimension() >= 2 && s.code.dimension() <= 20) {
    const Rational delta = c0.min_distance();
    const Rational delta2 = c0.generalized_distance(2);
    const Rational m = std::min(delta2, Rational(2) * delta);
    const Rational bound = (Rational(1) - eps) * delta * m;
    const Rational got = s.code.second_generalized_distance();
    json l{{"delta2_C", got.to_string()},
           {"bound", bound.to_string()},
           {"bound_at_eps0", (delta * m).to_string()},
           {"holds", got >= bound},
           {"tight_at_eps0", got == delta * m}};
    if (s.lambda) {
      const Rational lambda = approximate_rational(*s.lambda);
      l["hypothesis_holds"] = lambda / d <= delta2 * delta.pow(2) * eps.pow(2) / Rational(16);
    } else {
      l["hypothesis_holds"] = nullptr;
    }
    j["second_distance_check"] = l;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_channel(const Options& o) {
  const Setup s = make_setup(o);
  const auto [c, z] = run_channel(o, s.code, o.spec.input);
  emit(o.spec.out, io::format_word(z));
  if (!o.codeword_out.empty()) io::write_file(o.codeword_out, io::format_word(c));
  std::cerr << json{{"N", z.size()}, {"erasures", z.erasure_count()}}.dump() << '\n';
  return 0;
}

void write_report(const Options& o, const json& report) {
  if (o.spec.report.empty())
    std::cerr << report.dump() << '\n';
  else
    io::write_file(o.spec.report, report.dump(2) + "\n");
}

int cmd_decode(const Options& o) {
  const Setup s = make_setup(o);
  const ErasedWord z = received_word(o, s);
  const Outcome out = run_decoder(o, s, z);
  if (!out.output.empty()) emit(o.spec.out, out.output);
  write_report(o, out.report);
  return finish_status(o, out);
}

int cmd_verify(const Options& o) {
  const Setup s = make_setup(o);
  const ErasedWord z = received_word(o, s);
  const Outcome out = run_decoder(o, s, z);
  write_report(o, out.report);
  const AffineSpace truth = s.code.oracle_list_decode(z);
  auto dim = [](const AffineSpace& a) { return a.is_empty() ? std::string("empty") : std::to_string(a.dimension()); };
  if (!out.space && !out.words) {
    std::cout << "INCOMPLETE " << out.status << " oracle " << dim(truth) << '\n';
    return 1;
  }
  bool equal = false;
  std::string mine;
  if (out.space) {
    equal = affine_equal(*out.space, truth);
    mine = dim(*out.space);
  } else {
    const auto& w = *out.words;
    mine = w.empty() ? "empty" : std::to_string(std::countr_zero(w.size()));
    if (truth.is_empty()) {
      equal = w.empty();
    } else if (truth.dimension() <= 20) {
      auto all = truth.enumerate(20);
      std::sort(all.begin(), all.end());
      equal = all == w;
    }
  }
  std::cout << (equal ? "EQUAL" : "DIFFER") << " dims " << mine << '/' << dim(truth) << '\n';
  return equal ? 0 : 1;
}

int cmd_bench(const Options& o) {
  const std::string code_spec = o.spec.code.empty() ? "parity:" + std::to_string(o.degree) : o.spec.code;
  const double rate = o.spec.rate.value_or(0.01);
  json rows = json::array();
  double lo = 0, hi = 0;
  for (std::size_t n : o.sizes) {
    const ExpanderCode code(double_cover(random_regular(n, o.degree, o.spec.seed)), io::make_code(code_spec, o.spec.seed));
    DecoderParams p;
    p.r = std::min(o.spec.r, code.inner().dimension());
    p.epsilon = Rational::parse(o.spec.epsilon);
    // The decoder is linear, so timing on the zero word loses nothing and
    // skips the cubic codeword basis.
    const auto z = code.erase_rate(BitVector(code.block_length()), rate, stream_seed(o.spec.seed, 2));
    double best = 0;
    std::string status;
    std::size_t a = 0;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(o.reps, 1); ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = list_decode_fast(code, z, p);
      const double t = elapsed(t0);
      best = rep == 0 ? t : std::min(best, t);
      status = to_string(r.status);
      a = r.report.a;
    }
    const double per_edge = best / static_cast<double>(code.block_length()) * 1e9;
    lo = rows.empty() ? per_edge : std::min(lo, per_edge);
    hi = rows.empty() ? per_edge : std::max(hi, per_edge);
    rows.push_back({{"n", n}, {"N", code.block_length()}, {"erasures", z.erasure_count()}, {"status", status},
                    {"a", a}, {"seconds", best}, {"ns_per_edge", per_edge}});
  }
  json j{{"code", code_spec}, {"degree", o.degree}, {"rate", rate}, {"runs", rows},
         {"per_edge_spread", lo > 0 ? hi / lo : 0.0}};
  emit(o.spec.out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erasure list decoding of expander codes"};
  app.require_subcommand(1);
  Options flags;
  std::vector<std::pair<CLI::Option*, std::function<void(Options&)>>> overrides;

  auto add_common = [&](CLI::App* sub) {
    auto track = [&](CLI::Option* opt, std::function<void(Options&)> copy) { overrides.emplace_back(opt, std::move(copy)); };
    track(sub->add_option("--graph", flags.spec.graph, "graph spec, e.g. complete:8 or random_regular:64:8"),
          [&](Options& o) { o.spec.graph = flags.spec.graph; });
    track(sub->add_option("--code", flags.spec.code, "inner code spec, e.g. hamming74 or parity:8"),
          [&](Options& o) { o.spec.code = flags.spec.code; });
    track(sub->add_option("--r", flags.spec.r, "list-size exponent"), [&](Options& o) { o.spec.r = flags.spec.r; });
    track(sub->add_option("--epsilon", flags.spec.epsilon, "NUM/DEN in (0, 1]"),
          [&](Options& o) { o.spec.epsilon = flags.spec.epsilon; });
    track(sub->add_option("--s-cap", flags.spec.s_cap, "advice cap for list-slow"),
          [&](Options& o) { o.spec.s_cap = flags.spec.s_cap; });
    track(sub->add_option("--seed", flags.spec.seed, "64-bit seed"), [&](Options& o) { o.spec.seed = flags.spec.seed; });
    track(sub->add_option("--erasures", flags.spec.erasures, "erase exactly COUNT coordinates"),
          [&](Options& o) { o.spec.erasures = flags.spec.erasures; });
    track(sub->add_option("--rate", flags.spec.rate, "erase each coordinate with probability P"),
          [&](Options& o) { o.spec.rate = flags.spec.rate; });
    track(sub->add_option("--pattern", flags.spec.pattern, "file of edge ids to erase"),
          [&](Options& o) { o.spec.pattern = flags.spec.pattern; });
    track(sub->add_option("--alg", flags.spec.alg, "unique | list-slow | list-fast | oracle"),
          [&](Options& o) { o.spec.alg = flags.spec.alg; });
    track(sub->add_option("--input", flags.spec.input, "input word file"),
          [&](Options& o) { o.spec.input = flags.spec.input; });
    track(sub->add_option("--out", flags.spec.out, "primary output file (default stdout)"),
          [&](Options& o) { o.spec.out = flags.spec.out; });
    track(sub->add_option("--report", flags.spec.report, "JSON report file (default stderr)"),
          [&](Options& o) { o.spec.report = flags.spec.report; });
    sub->add_option("--spec", flags.spec_file, "load an experiment spec (flags override it)");
    sub->add_option("--save-spec", flags.save_spec, "write the effective experiment spec");
    sub->add_option("--lambda", flags.lambda, "auto | none | VALUE");
  };

  auto* gen = app.add_subcommand("gen", "write a graph and/or generator matrix file");
  add_common(gen);
  gen->add_option("--code-out", flags.code_out, "generator output when --graph is also given");
  auto* build = app.add_subcommand("build", "construct the code and print its parameters");
  add_common(build);
  auto* analyze = app.add_subcommand("analyze", "distances, thresholds and the second-distance check");
  add_common(analyze);
  auto* channel = app.add_subcommand("channel", "sample (or read) a codeword and erase it");
  add_common(channel);
  channel->add_option("--codeword-out", flags.codeword_out, "write the sent codeword");
  auto* decode = app.add_subcommand("decode", "run a decoder");
  add_common(decode);
  decode->add_option("--expect", flags.expect, "exit 0 iff the status equals this");
  auto* verify = app.add_subcommand("verify", "compare a decoder with the oracle");
  add_common(verify);
  auto* bench = app.add_subcommand("bench", "time list-fast on random regular graphs");
  add_common(bench);
  bench->add_option("--sizes", flags.sizes, "side sizes n");
  bench->add_option("--degree", flags.degree, "graph degree");
  bench->add_option("--reps", flags.reps, "repetitions per size (minimum is reported)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Options o = flags;
    if (!flags.spec_file.empty()) {
      o.spec = json::parse(io::read_file(flags.spec_file)).get<cli::ExperimentSpec>();
      for (auto& [opt, copy] : overrides)
        if (opt->count() > 0) copy(o);
    }
    if (!o.save_spec.empty()) io::write_file(o.save_spec, json(o.spec).dump(2) + "\n");
    if (*gen) return cmd_gen(o);
    if (*build) return cmd_build(o);
    if (*analyze) return cmd_analyze(o);
    if (*channel) return cmd_channel(o);
    if (*decode) return cmd_decode(o);
    if (*verify) return cmd_verify(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: bad spec file: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
