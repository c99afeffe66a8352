#pragma once

// Command-line front end. Exit codes:
//   0  success
//   1  invalid cover, failed check, or nothing found
//   2  parse or usage error
//   3  degenerate construction failure (BoxInsideZ, SingletonUnfixable)

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starweb/choice.hpp"
#include "starweb/cover.hpp"
#include "starweb/errors.hpp"
#include "starweb/format.hpp"
#include "starweb/oracle.hpp"
#include "starweb/random_cover.hpp"
#include "starweb/setmap.hpp"
#include "starweb/witness.hpp"

namespace starweb::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,
  kParseError = 2,
  kDegenerate = 3,
};

enum class ChoiceMode { deterministic, seeded_random };

struct RunConfig {
  std::string command;
  std::string input;
  std::string second_input;
  std::size_t tau = 0;
  std::size_t count = 0;
  std::size_t max_size = 0;
  std::size_t horizon = oracle::kDefaultHorizon;
  std::optional<std::uint64_t> seed;
  ChoiceMode mode = ChoiceMode::deterministic;
  std::string output;
};

inline const char* kBoxInsideZMessage =
    "BoxInsideZ (Lemma 2 hypothesis fails at finite tau)";
inline const char* kSingletonMessage =
    "SingletonUnfixable (Lemma 1 hypothesis fails at finite tau)";

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(0, "cannot write " + path.string());
  out << text;
}

inline Cover load_cover(const std::string& path) {
  try {
    return format::parse_cover(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

// STARWEB_HORIZON overrides the default oracle horizon.
inline std::size_t horizon_from_env() {
  const char* v = std::getenv("STARWEB_HORIZON");
  if (!v || !*v) return oracle::kDefaultHorizon;
  std::size_t h = 0;
  const std::string_view s{v};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), h);
  if (ec != std::errc{} || ptr != s.data() + s.size() || h == 0)
    throw ParseError(0, "STARWEB_HORIZON must be a positive integer");
  return h;
}

inline const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline int verify_cover(const RunConfig& cfg, std::ostream& out) {
  const Cover c = detail::load_cover(cfg.input);
  const auto v = validate_cover(c);
  if (v) {
    out << "valid\n";
    return kOk;
  }
  out << "invalid: " << v.missed->to_string() << "\n";
  return kInvalid;
}

inline ChoiceRule make_choice(const RunConfig& cfg) {
  if (cfg.mode == ChoiceMode::seeded_random) {
    if (!cfg.seed) throw ParseError(0, "--random-choices requires --seed");
    return ChoiceRule::seeded(*cfg.seed);
  }
  return ChoiceRule::first();
}

inline int synthesize_cover(const RunConfig& cfg, std::ostream& out,
                            std::ostream& err) {
  const Cover c = detail::load_cover(cfg.input);
  ChoiceRule choice = make_choice(cfg);
  WitnessReport rep = [&] {
    try {
      return synthesize(c, choice);
    } catch (const InvalidCover& e) {
      out << "invalid: " << e.certificate() << "\n";
      throw;
    }
  }();
  const std::string text = format::write_report(rep);
  if (cfg.output.empty())
    out << text;
  else
    detail::write_file(cfg.output, text);
  if (!rep.ok()) err << "witness check failed\n";
  return rep.ok() ? kOk : kInvalid;
}

inline int check_witness(const RunConfig& cfg, std::ostream& out) {
  const Cover c = detail::load_cover(cfg.input);
  LevelFamily a = [&] {
    try {
      return format::parse_witness(detail::read_file(cfg.second_input));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), cfg.second_input + ": " + e.what());
    }
  }();
  if (a.tau() != c.tau())
    throw ParseError(0, "witness and cover dimensions differ");
  if (auto v = validate_cover(c); !v) {
    out << "invalid: " << v.missed->to_string() << "\n";
    return kInvalid;
  }
  const auto cd = is_closed_discrete(a);
  const auto cov = region_covers_X(star(a, c), c.tau());
  out << "closed_discrete: " << detail::bool_text(cd.closed_discrete) << "\n";
  out << "star_covers: " << detail::bool_text(cov.covered) << "\n";
  if (cd.violating)
    out << "certificate: " << XPoint{*cd.violating, Level::top()}.to_string()
        << "\n";
  if (cov.missed) out << "certificate: " << cov.missed->to_string() << "\n";

  bool agree = true;
  if (c.tau() <= kOracleMaxTau) {
    try {
      const auto ocd = oracle::brute_closed_discrete(a, cfg.horizon);
      const auto ocov = oracle::brute_star_covers(a, c, cfg.horizon);
      out << "oracle_closed_discrete: "
          << detail::bool_text(ocd.closed_discrete) << "\n";
      out << "oracle_star_covers: " << detail::bool_text(ocov.covers) << "\n";
      agree = ocd.closed_discrete == cd.closed_discrete &&
              ocov.covers == cov.covered;
    } catch (const HorizonTooSmall& e) {
      out << "oracle: " << e.what() << "\n";
    }
  } else {
    out << "oracle: skipped (tau > " << kOracleMaxTau << ")\n";
  }
  return cd.closed_discrete && cov.covered && agree ? kOk : kInvalid;
}

inline int random_covers(const RunConfig& cfg, std::ostream& out) {
  if (cfg.tau < 2 || cfg.tau > kMaxTau)
    throw ParseError(0, "--tau must lie in [2, 64]");
  if (cfg.count == 0) throw ParseError(0, "--count must be positive");
  if (!cfg.seed) throw ParseError(0, "--seed is required");
  const std::filesystem::path dir = cfg.output.empty() ? "." : cfg.output;
  std::filesystem::create_directories(dir);

  std::mt19937_64 rng{*cfg.seed};
  std::size_t success = 0, degenerate = 0, failed = 0;
  const int width =
      std::max<int>(4, static_cast<int>(std::to_string(cfg.count).size()));
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const Cover c = random_cover(cfg.tau, rng);
    std::ostringstream name;
    name << "cover_" << std::setw(width) << std::setfill('0') << i << ".txt";
    detail::write_file(dir / name.str(), format::write_cover(c));
    try {
      (synthesize(c).ok() ? success : failed)++;
    } catch (const BoxInsideZ&) {
      ++degenerate;
    } catch (const SingletonUnfixable&) {
      ++degenerate;
    }
  }
  out << "random-covers: tau=" << cfg.tau << " count=" << cfg.count
      << " seed=" << *cfg.seed << " success=" << success
      << " degenerate=" << degenerate << " failed=" << failed << "\n";
  return failed == 0 ? kOk : kInvalid;
}

inline int free_decompose_file(const RunConfig& cfg, std::ostream& out) {
  SetMapping f = [&] {
    try {
      return format::parse_set_mapping(detail::read_file(cfg.input));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), cfg.input + ": " + e.what());
    }
  }();
  out << format::write_decomposition(free_decompose(f));
  return kOk;
}

inline int starcompact(const RunConfig& cfg, std::ostream& out) {
  const Cover c = detail::load_cover(cfg.input);
  if (auto v = validate_cover(c); !v) {
    out << "invalid: " << v.missed->to_string() << "\n";
    return kInvalid;
  }
  const auto res = oracle::starcompact_search(c, cfg.max_size, cfg.horizon);
  if (res.found) {
    out << "found " << res.found->size() << ":";
    const char* sep = " ";
    for (const auto& x : *res.found) {
      out << sep << x.to_string();
      sep = ",";
    }
    out << "\n";
    return kOk;
  }
  out << (res.exhaustive ? "not found (exhaustive)\n"
                         : "not found (greedy only, inconclusive)\n");
  return kInvalid;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out,
                    std::ostream& err) {
  try {
    if (cfg.command == "verify-cover") return verify_cover(cfg, out);
    if (cfg.command == "synthesize") return synthesize_cover(cfg, out, err);
    if (cfg.command == "check-witness") return check_witness(cfg, out);
    if (cfg.command == "random-covers") return random_covers(cfg, out);
    if (cfg.command == "free-decompose") return free_decompose_file(cfg, out);
    if (cfg.command == "starcompact") return starcompact(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kParseError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InvalidCover& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BoxInsideZ& e) {
    out << "error: " << kBoxInsideZMessage << ": box {" << e.box() << "}\n";
    return kDegenerate;
  } catch (const SingletonUnfixable& e) {
    out << "error: " << kSingletonMessage << ": alpha=" << e.alpha() << "\n";
    return kDegenerate;
  } catch (const HorizonTooSmall& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Star-cover witnesses for X = (D^tau x (w+1)) minus "
               "non-unit top points"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* verify = app.add_subcommand("verify-cover", "Check that a file is a cover of X");
  verify->add_option("file", cfg.input)->required();

  bool random_choices = false;
  std::uint64_t seed = 0;
  auto* synth = app.add_subcommand("synthesize", "Build a closed discrete star witness");
  synth->add_option("file", cfg.input)->required();
  auto* seed_opt = synth->add_option("--seed", seed, "Seed for random choices");
  synth->add_flag("--random-choices", random_choices,
                  "Resolve free choices at random (needs --seed)");
  synth->add_option("--out", cfg.output, "Write the report here");

  auto* check = app.add_subcommand("check-witness", "Check a witness file against a cover");
  check->add_option("cover", cfg.input)->required();
  check->add_option("witness", cfg.second_input)->required();

  auto* rnd = app.add_subcommand("random-covers", "Generate random valid covers");
  rnd->add_option("--tau", cfg.tau)->required();
  rnd->add_option("--count", cfg.count)->required();
  auto* rnd_seed = rnd->add_option("--seed", seed)->required();
  rnd->add_option("--out", cfg.output, "Output directory")->required();

  auto* fd = app.add_subcommand("free-decompose", "Split a set mapping into free classes");
  fd->add_option("file", cfg.input)->required();

  auto* sc = app.add_subcommand("starcompact", "Search for a finite star witness");
  sc->add_option("file", cfg.input)->required();
  sc->add_option("--max-size", cfg.max_size)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (seed_opt->count() > 0 || rnd_seed->count() > 0) cfg.seed = seed;
  if (random_choices) cfg.mode = ChoiceMode::seeded_random;
  try {
    cfg.horizon = detail::horizon_from_env();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  return dispatch(cfg, out, err);
}

}  // namespace starweb::cli
