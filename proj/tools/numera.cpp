// Command-line front end for the numeration-systems library.
//
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 format error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "numera/affine.hpp"
#include "numera/periodic.hpp"
#include "numera/pisot.hpp"

using namespace numera;

namespace {

Dfa load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open automaton file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_automaton(ss.str());
}

struct Loaded {
  Dfa dfa;
  CountingTables tables;
  GrowthProfile growth;
};

Loaded load_system(const std::string& path, int horizon) {
  Loaded s;
  s.dfa = load_automaton(path);
  s.tables = count_u_v(s.dfa, horizon);
  s.growth = growth_profile(s.dfa, s.tables, perron_theta(s.dfa));
  return s;
}

// Exact form: plain rational, or polynomial in theta with a decimal hint.
std::string num_str(const AlgNum& x, int digits) {
  if (x.is_rational()) return rat_str(x.rat_value());
  const auto& cs = x.residue().coef();
  std::string s;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k] == 0) continue;
    if (!s.empty()) s += " + ";
    s += rat_str(cs[k]);
    if (k >= 1) s += "*theta";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  if (s.empty()) s = "0";
  return s + " ~" + x.to_decimal(digits);
}

AlgNum parse_point(const GrowthProfile& g, const std::string& s) {
  return g.field.from_rat(parse_rat(s));
}

int budget_steps(int flag_value) {
  if (const char* env = std::getenv("NUMERA_BUDGET_STEPS")) {
    try {
      return std::stoi(env);
    } catch (...) {
      throw FormatError("NUMERA_BUDGET_STEPS is not an integer");
    }
  }
  return flag_value;
}

AlgField parse_field(const std::vector<long>& coeffs, const std::string& lo,
                     const std::string& hi) {
  return AlgField::make(Poly::from_ints(coeffs), parse_rat(lo), parse_rat(hi));
}

std::string digit_stream_str(const std::vector<long>& digits, int preperiod,
                             int period) {
  std::string s;
  for (int i = 0; i < preperiod; ++i) {
    if (i) s += " ";
    s += std::to_string(digits[i]);
  }
  if (period > 0) {
    if (preperiod) s += " ";
    s += "(";
    for (int i = 0; i < period; ++i) {
      if (i) s += " ";
      s += std::to_string(digits[preperiod + i]);
    }
    s += ")^w";
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abstract numeration systems: ranking, real representations, "
               "periodic structure, and positional constructions"};
  app.require_subcommand(1);

  std::string automaton_path, word_arg, point_arg, prefix_arg;
  std::string lo_arg = "1", hi_arg = "2";
  std::vector<long> poly_arg;
  std::vector<std::string> sample_args;
  long n_arg = 0;
  int digits = 12, horizon = 200, max_steps = 10000, budget = 1000;
  int cycle_max = 4, path_max = 2, terms = 40, factor_len = 5;
  bool from_left = false, exact = false;

  auto add_automaton = [&](CLI::App* c) {
    c->add_option("--automaton", automaton_path, "automaton file")->required();
  };

  CLI::App* info = app.add_subcommand("info", "growth summary of a system");
  add_automaton(info);
  info->add_option("--digits", digits, "decimal digits for approximations");

  CLI::App* val = app.add_subcommand("val", "rank of a word in the language");
  add_automaton(val);
  val->add_option("--word", word_arg, "word to rank")->required();

  CLI::App* rep = app.add_subcommand("rep", "word with a given rank");
  add_automaton(rep);
  rep->add_option("--n", n_arg, "rank")->required();

  CLI::App* interval =
      app.add_subcommand("interval", "interval of reals below a prefix");
  add_automaton(interval);
  interval->add_option("--prefix", prefix_arg, "left factor")->required();
  interval->add_option("--digits", digits, "decimal digits");
  interval->add_flag("--exact", exact, "also print exact serialized endpoints");

  CLI::App* represent_cmd =
      app.add_subcommand("represent", "expand a point of [1/theta, 1]");
  add_automaton(represent_cmd);
  represent_cmd->add_option("--x", point_arg, "rational point p/q")->required();
  represent_cmd->add_option("--max-steps", max_steps, "expansion budget");
  represent_cmd->add_flag("--from-left", from_left,
                          "left-limit convention at cell boundaries");
  represent_cmd->add_option("--digits", digits, "decimal digits");

  CLI::App* value_up =
      app.add_subcommand("value-up", "value of an ultimately periodic word");
  add_automaton(value_up);
  value_up->add_option("--word", word_arg, "word in u(v)^w syntax")->required();
  value_up->add_option("--digits", digits, "decimal digits");

  CLI::App* per = app.add_subcommand("per", "periods of infinite words");
  add_automaton(per);
  CLI::App* aper = app.add_subcommand("aper", "admissible periods with anchor");
  add_automaton(aper);
  CLI::App* uper = app.add_subcommand(
      "uper", "omega-expression for ultimately periodic infinite words");
  add_automaton(uper);

  CLI::App* fixed_points = app.add_subcommand(
      "fixed-points", "periodic points from cycle compositions");
  add_automaton(fixed_points);
  fixed_points->add_option("--cycle-max", cycle_max, "maximal cycle length");
  fixed_points->add_option("--path-max", path_max, "maximal access path");
  fixed_points->add_option("--digits", digits, "decimal digits");

  CLI::App* simplify =
      app.add_subcommand("simplify", "drop states with vanishing weight");
  add_automaton(simplify);

  CLI::App* check_cmd =
      app.add_subcommand("check", "structural and numeric growth checks");
  add_automaton(check_cmd);

  CLI::App* pisot = app.add_subcommand("pisot", "positional constructions");
  pisot->require_subcommand(1);
  auto add_field = [&](CLI::App* c) {
    c->add_option("--poly", poly_arg,
                  "integer coefficients, constant term first")
        ->required();
    c->add_option("--lo", lo_arg, "isolating interval, lower endpoint");
    c->add_option("--hi", hi_arg, "isolating interval, upper endpoint");
  };
  CLI::App* expand1 =
      pisot->add_subcommand("expand1", "digit expansion of one in base theta");
  add_field(expand1);
  expand1->add_option("--budget", budget, "periodicity detection budget");
  CLI::App* build =
      pisot->add_subcommand("build", "positional system for base theta");
  add_field(build);
  build->add_option("--terms", terms, "scale sequence terms");
  CLI::App* equiv = pisot->add_subcommand(
      "equiv", "cross-check positional digits against the abstract system");
  add_field(equiv);
  equiv->add_option("--sample", sample_args, "rational sample points p/q");
  equiv->add_option("--digits", digits, "digits compared per sample");
  equiv->add_option("--horizon", horizon, "counting horizon");
  equiv->add_option("--factor-len", factor_len, "interval comparison depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*info) {
      Loaded s = load_system(automaton_path, horizon);
      std::cout << "states: " << s.dfa.num_states() << "\n";
      std::cout << "alphabet:";
      for (const auto& l : s.dfa.alphabet.letters()) std::cout << " " << l;
      std::cout << "\n";
      std::cout << "theta: " << num_str(s.growth.theta(), digits) << "\n";
      for (int q = 0; q < s.dfa.num_states(); ++q)
        std::cout << "a[" << s.dfa.state_names[q]
                  << "] = " << num_str(s.growth.a[q], digits) << "\n";
    } else if (*val) {
      Dfa d = load_automaton(automaton_path);
      std::cout << genealogical_val(d, d.alphabet.parse_word(word_arg))
                << "\n";
    } else if (*rep) {
      Dfa d = load_automaton(automaton_path);
      std::cout << d.alphabet.word_str(genealogical_rep(d, Int(n_arg)))
                << "\n";
    } else if (*interval) {
      Loaded s = load_system(automaton_path, horizon);
      IwInterval i = interval_of_prefix(s.growth, s.dfa,
                                        s.dfa.alphabet.parse_word(prefix_arg));
      std::cout << "[" << num_str(i.lower, digits) << ", "
                << num_str(i.upper, digits) << "]\n";
      if (exact)
        std::cout << "lower: " << i.lower.serialize(digits)
                  << "\nupper: " << i.upper.serialize(digits) << "\n";
    } else if (*represent_cmd) {
      Loaded s = load_system(automaton_path, horizon);
      AlgNum x = parse_point(s.growth, point_arg);
      RepResult r = represent(s.growth, s.dfa, x, budget_steps(max_steps),
                              from_left);
      if (r.status == RepStatus::UP) {
        std::cout << "word = " << s.dfa.alphabet.upword_str(r.word) << "\n";
        std::cout << "repeat: step " << r.trace.detect_j
                  << " returns to step " << r.trace.detect_i << "\n";
      } else {
        std::cout << "prefix = " << s.dfa.alphabet.word_str(r.prefix)
                  << " (no repeat within budget)\n";
      }
      for (const auto& st : r.trace.steps)
        std::cout << "  (" << s.dfa.state_names[st.state] << ", "
                  << num_str(st.y, digits) << ") emits "
                  << s.dfa.alphabet.name(st.letter) << "\n";
    } else if (*value_up) {
      Loaded s = load_system(automaton_path, horizon);
      AlgNum v = value_of_up(s.growth, s.dfa,
                             s.dfa.alphabet.parse_upword(word_arg));
      std::cout << num_str(v, digits);
      if (v.is_rational()) std::cout << " ~" << v.to_decimal(digits);
      std::cout << "\n";
    } else if (*per) {
      Dfa d = load_automaton(automaton_path);
      std::cout << serialize_automaton(per_language(d));
    } else if (*aper) {
      Dfa d = load_automaton(automaton_path);
      std::cout << serialize_automaton(aper_language(d));
    } else if (*uper) {
      Dfa d = load_automaton(automaton_path);
      std::cout << serialize_omega(uper_omega(d));
    } else if (*fixed_points) {
      Loaded s = load_system(automaton_path, horizon);
      for (const auto& u :
           enumerate_up_values(s.growth, s.dfa, cycle_max, path_max))
        std::cout << num_str(u.value, digits) << "  "
                  << s.dfa.alphabet.upword_str(u.word) << "\n";
    } else if (*simplify) {
      Loaded s = load_system(automaton_path, horizon);
      std::cout << serialize_automaton(simplify_language(s.dfa, s.growth));
    } else if (*check_cmd) {
      Dfa d = load_automaton(automaton_path);
      HypothesisReport r = check_hypothesis(d, count_u_v(d, horizon));
      std::cout << "verdict: " << r.verdict << "\n";
      if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
      std::cout << "language infinite: " << (r.language_infinite ? "yes" : "no")
                << "\n"
                << "branching cycle: " << (r.branching_cycle ? "yes" : "no")
                << "\n"
                << "fitted polynomial degree: " << r.fitted_degree << "\n";
    } else if (*expand1) {
      AlgField f = parse_field(poly_arg, lo_arg, hi_arg);
      ThetaExpansionOfOne e = theta_expansion_of_one(f, budget);
      if (e.finite)
        std::cout << "expansion of 1: "
                  << digit_stream_str(e.digits,
                                      static_cast<int>(e.digits.size()), 0)
                  << " (finite)\n";
      else
        std::cout << "expansion of 1: "
                  << digit_stream_str(e.digits, e.preperiod_N, e.period_p)
                  << "\n";
      PisotStatus p = pisot_check(f);
      std::cout << "pisot: "
                << (p == PisotStatus::Pisot
                        ? "yes"
                        : p == PisotStatus::NotPisot ? "no" : "unknown")
                << "\n";
    } else if (*build) {
      AlgField f = parse_field(poly_arg, lo_arg, hi_arg);
      BertrandSystem b = build_bertrand(theta_expansion_of_one(f, budget), f,
                                        terms);
      std::cout << "scale sequence:";
      for (int i = 0; i <= std::min<int>(terms, 12); ++i)
        std::cout << " " << b.u_seq[i];
      std::cout << (terms > 12 ? " ...\n" : "\n");
      std::cout << serialize_automaton(b.a_prime);
    } else if (*equiv) {
      AlgField f = parse_field(poly_arg, lo_arg, hi_arg);
      BertrandSystem b = build_bertrand(theta_expansion_of_one(f, budget), f,
                                        terms);
      std::vector<AlgNum> samples;
      for (const auto& s : sample_args)
        samples.push_back(f.from_rat(parse_rat(s)));
      EquivReport r =
          equivalence_check(b, samples, digits, horizon, factor_len);
      std::cout << "samples checked: " << r.samples_checked << "\n"
                << "digit mismatches: " << r.digit_mismatches.size() << "\n"
                << "intervals checked: " << r.intervals_checked << "\n"
                << "interval mismatches: " << r.interval_mismatches.size()
                << "\n"
                << "result: " << (r.ok() ? "OK" : "MISMATCH") << "\n";
      for (const auto& m : r.digit_mismatches) std::cout << "  " << m << "\n";
      for (const auto& m : r.interval_mismatches)
        std::cout << "  " << m << "\n";
    }
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 3;
  } catch (const DeterminismError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
