#include "pel/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pel/beta.hpp"
#include "pel/errors.hpp"
#include "pel/harness.hpp"
#include "pel/parser.hpp"
#include "pel/perm.hpp"
#include "pel/printer.hpp"
#include "pel/projective.hpp"
#include "pel/rpo.hpp"
#include "pel/translate.hpp"
#include "pel/typing.hpp"

namespace pel {

namespace {

using nlohmann::json;

struct UsageFailure {
  std::string message;
};

std::string slurp(std::istream& s) {
  std::ostringstream o;
  o << s.rdbuf();
  return o.str();
}

// Shared input/output options every term-consuming subcommand carries.
struct Io {
  std::string file;
  std::string expr;
  bool open = false;
  std::vector<std::string> theta_names;
  bool json_out = false;

  void attach(CLI::App* cmd, bool with_theta = true) {
    cmd->add_option("input", file, "input file, - or absent for stdin");
    cmd->add_option("-e,--expr", expr, "inline term text instead of a file");
    cmd->add_flag("--json", json_out, "line-delimited structured output");
    if (with_theta) {
      cmd->add_flag("--open", open, "allow free labels, ordered by --theta");
      cmd->add_option("--theta", theta_names,
                      "free labels the input may use, head (innermost) first")
          ->delimiter(',');
    }
  }

  std::string text(std::istream& in) const {
    if (!expr.empty()) return expr;
    if (file.empty() || file == "-") return slurp(in);
    std::ifstream f(file);
    if (!f) throw UsageFailure{"cannot open " + file};
    return slurp(f);
  }

  ParseOptions parse_opts() const {
    ParseOptions p;
    p.open = open || !theta_names.empty();
    p.theta = theta_names;
    return p;
  }

  LabelSeq theta() const {
    LabelSeq seq;
    for (const std::string& n : theta_names) seq.push_back(Label{0, n});
    return seq;
  }
};

Strategy strategy_from(const std::string& name) {
  if (name == "perm") return Strategy::PermOnly;
  if (name == "beta") return Strategy::LeftmostBeta;
  if (name == "complete") return Strategy::Complete;
  return Strategy::FullLeftmost;
}

void emit_dist(const Distribution& d, bool json_out, std::ostream& out) {
  if (!json_out) {
    out << format_dist(d);
    return;
  }
  std::string formatted = format_dist(d);
  std::istringstream lines(formatted);
  std::string line;
  while (std::getline(lines, line)) {
    auto tab = line.find('\t');
    json rec;
    rec["prob"] = line.substr(0, tab);
    rec["term"] = line.substr(tab + 1);
    out << rec.dump() << "\n";
  }
}

int run_test_command(const std::string& property, const GenConfig& cfg,
                     std::size_t trials, bool json_out, std::ostream& out,
                     std::ostream& err) {
  std::vector<std::pair<std::string,
                        PropertyReport (*)(const GenConfig&, std::size_t)>>
      all = {
          {"local-confluence", check_local_confluence},
          {"diamond", check_diamond_complete},
          {"church-rosser", check_church_rosser},
          {"projective-simulation", check_projective_simulation},
          {"cbv-simulation", check_cbv_simulation},
          {"perm-sn-certified", check_perm_sn_certified},
          {"typed-sn", check_typed_sn},
      };
  bool any_failed = false;
  bool matched = false;
  for (auto& [name, fn] : all) {
    if (property != "all" && property != name) continue;
    matched = true;
    PropertyReport rep = fn(cfg, trials);
    if (json_out) {
      json rec;
      rec["property"] = rep.property;
      rec["trials"] = rep.trials;
      rec["failures"] = rep.failures.size();
      rec["exhausted"] = rep.exhausted;
      out << rec.dump() << "\n";
    } else {
      out << rep.property << ": " << rep.trials << " trials, "
          << rep.failures.size() << " failures";
      if (rep.exhausted) out << ", " << rep.exhausted << " budget exhaustions";
      out << "\n";
    }
    err << "# " << rep.summary() << "\n";
    std::size_t shown = 0;
    for (const Failure& f : rep.failures) {
      if (++shown > 5) {
        err << "  ... " << rep.failures.size() - 5 << " more\n";
        break;
      }
      err << "  seed " << f.seed << ": " << f.message;
      if (!f.counterexample.empty()) err << "\n    " << f.counterexample;
      err << "\n";
    }
    if (!rep.ok()) any_failed = true;
  }
  if (!matched) throw UsageFailure{"unknown property " + property};
  return any_failed ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  reset_fresh_ids();

  CLI::App app{"workbench for the probabilistic event lambda-calculus"};
  app.require_subcommand(1);

  Io parse_io, fmt_io, check_io, type_io, reduce_io, trace_io, translate_io,
      dist_io;
  bool parse_source_flavour = false, fmt_source_flavour = false;
  std::string reduce_strategy = "full", trace_strategy = "full";
  std::size_t reduce_max = kDefaultMaxSteps, trace_max = kDefaultMaxSteps,
              dist_max = kDefaultMaxSteps;
  bool reduce_trace = false, reduce_certify = false, trace_certify = false;
  bool translate_cbn_flag = false, translate_cbv_flag = false,
       translate_open = false;
  std::string test_property;
  GenConfig test_cfg;
  std::size_t test_trials = 200;
  bool test_typed = false, test_json = false;

  auto* c_parse = app.add_subcommand("parse", "parse and print back");
  parse_io.attach(c_parse);
  c_parse->add_flag("--source", parse_source_flavour,
                    "source flavour: (+) sums, no labels");

  auto* c_fmt = app.add_subcommand("fmt", "canonical formatting");
  fmt_io.attach(c_fmt);
  c_fmt->add_flag("--source", fmt_source_flavour,
                  "source flavour: (+) sums, no labels");

  auto* c_check = app.add_subcommand(
      "check", "report label closure and normal-form class");
  check_io.attach(c_check);

  auto* c_type = app.add_subcommand("typecheck", "infer a simple type");
  type_io.attach(c_type);

  auto* c_reduce = app.add_subcommand("reduce", "reduce to a normal form");
  reduce_io.attach(c_reduce);
  c_reduce
      ->add_option("--strategy", reduce_strategy,
                   "perm, beta, full, complete, or projective")
      ->check(CLI::IsMember({"perm", "beta", "full", "complete", "projective"}));
  c_reduce->add_option("--max-steps", reduce_max, "elementary step budget");
  c_reduce->add_flag("--trace", reduce_trace, "print each step");
  c_reduce->add_flag("--certify", reduce_certify,
                     "attach ordering certificates to permutative steps");

  auto* c_trace = app.add_subcommand("trace", "reduce and print every step");
  trace_io.attach(c_trace);
  c_trace
      ->add_option("--strategy", trace_strategy,
                   "perm, beta, full, complete, or projective")
      ->check(CLI::IsMember({"perm", "beta", "full", "complete", "projective"}));
  c_trace->add_option("--max-steps", trace_max, "elementary step budget");
  c_trace->add_flag("--certify", trace_certify,
                    "attach ordering certificates to permutative steps");

  auto* c_translate =
      app.add_subcommand("translate", "translate a source term");
  translate_io.attach(c_translate, false);
  c_translate->add_flag("--cbn", translate_cbn_flag, "call-by-name");
  c_translate->add_flag("--cbv", translate_cbv_flag,
                        "call-by-value (default)");
  c_translate->add_flag("--open", translate_open,
                        "print the open interpretation and its theta");

  auto* c_dist = app.add_subcommand("dist", "exact outcome distribution");
  dist_io.attach(c_dist, false);
  c_dist->add_option("--max-steps", dist_max, "head-reduction budget");

  auto* c_test = app.add_subcommand("test", "run a property check");
  c_test
      ->add_option("property", test_property,
                   "local-confluence, diamond, church-rosser, "
                   "projective-simulation, cbv-simulation, perm-sn-certified, "
                   "typed-sn, or all")
      ->required();
  c_test->add_option("--seed", test_cfg.seed, "base random seed");
  c_test->add_option("--trials", test_trials, "number of random trials");
  c_test->add_option("--size", test_cfg.max_size, "maximum term size");
  c_test->add_option("--labels", test_cfg.max_labels, "maximum generators");
  c_test->add_flag("--typed", test_typed, "draw only typed terms");
  c_test->add_flag("--json", test_json, "line-delimited structured output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_parse || *c_fmt) {
      const Io& io = *c_parse ? parse_io : fmt_io;
      bool source_flavour = *c_parse ? parse_source_flavour : fmt_source_flavour;
      std::string text =
          source_flavour ? print_source(parse_source(io.text(in)))
                         : print(parse_term(io.text(in), io.parse_opts()));
      if (io.json_out) {
        json rec;
        rec["term"] = text;
        out << rec.dump() << "\n";
      } else {
        out << text << "\n";
      }
      return 0;
    }

    if (*c_check) {
      Io io = check_io;
      io.open = true;  // report on open terms instead of rejecting them
      TermPtr t = parse_term(io.text(in), io.parse_opts());
      bool closed = label_closed(t);
      NormalClass cls = classify_normal_form(t);
      const char* cls_name = cls == NormalClass::N0   ? "N0"
                             : cls == NormalClass::P0 ? "P0"
                                                      : "none";
      if (io.json_out) {
        json rec;
        rec["term"] = print(t);
        rec["label_closed"] = closed;
        rec["normal_class"] = cls_name;
        out << rec.dump() << "\n";
      } else {
        out << "label-closed: " << (closed ? "yes" : "no") << "\n";
        out << "normal-class: " << cls_name << "\n";
      }
      if (!closed && !check_io.open && check_io.theta_names.empty()) {
        err << "error: term has free labels\n";
        return 1;
      }
      return 0;
    }

    if (*c_type) {
      TermPtr t = parse_term(type_io.text(in), type_io.parse_opts());
      TypePtr ty = infer(t);
      if (type_io.json_out) {
        json rec;
        rec["type"] = print_type(ty);
        out << rec.dump() << "\n";
      } else {
        out << print_type(ty) << "\n";
      }
      return 0;
    }

    if (*c_reduce || *c_trace) {
      const Io& io = *c_reduce ? reduce_io : trace_io;
      const std::string& strat_name =
          *c_reduce ? reduce_strategy : trace_strategy;
      std::size_t max_steps = *c_reduce ? reduce_max : trace_max;
      bool want_trace = *c_trace || reduce_trace;
      bool want_certify = *c_reduce ? reduce_certify : trace_certify;
      TermPtr t = parse_term(io.text(in), io.parse_opts());
      if (strat_name == "projective") {
        // The projective strategy branches, so its result is the
        // distribution rather than a single normal form.
        emit_dist(evaluate_dist(t, max_steps), io.json_out, out);
        return 0;
      }
      LabelSeq theta = io.theta();
      PermOptions opts;
      if (!theta.empty()) opts.theta = &theta;
      ReduceResult r = reduce(t, strategy_from(strat_name), max_steps, opts);
      std::size_t certified = 0;
      if (want_certify) {
        for (const Step& s : r.trace) {
          if (s.rule == Rule::Beta) continue;
          StepCertificate cert = certify_perm_step(s, opts);
          if (!cert.ok) {
            err << "error: uncertified step " << format_step(s) << ": "
                << cert.detail << "\n";
            return 1;
          }
          ++certified;
        }
      }
      if (io.json_out) {
        if (want_trace)
          for (const Step& s : r.trace) {
            json rec;
            rec["rule"] = rule_name(s.rule);
            rec["pos"] = position_to_string(s.pos);
            rec["term"] = print(s.after);
            out << rec.dump() << "\n";
          }
        json rec;
        rec["term"] = print(r.term);
        rec["beta_steps"] = r.beta_steps;
        rec["perm_steps"] = r.perm_steps;
        if (want_certify) rec["certificate"] = "ok";
        out << rec.dump() << "\n";
      } else {
        if (want_trace)
          for (const Step& s : r.trace) out << format_step(s) << "\n";
        out << print(r.term) << "\n";
        if (want_certify)
          out << "certified " << certified << " permutative steps\n";
      }
      return 0;
    }

    if (*c_translate) {
      if (translate_cbn_flag && translate_cbv_flag)
        throw UsageFailure{"--cbn and --cbv are mutually exclusive"};
      SourcePtr src = parse_source(translate_io.text(in));
      if (translate_open) {
        if (translate_cbn_flag)
          throw UsageFailure{"--open only applies to the cbv translation"};
        OpenInterp o = translate_cbv_open(src);
        if (translate_io.json_out) {
          json rec;
          json names = json::array();
          for (const Label& l : o.theta) names.push_back(l.name);
          rec["theta"] = names;
          rec["term"] = print(o.body);
          out << rec.dump() << "\n";
        } else {
          out << "theta:";
          for (const Label& l : o.theta) out << " " << l.name;
          out << "\n" << print(o.body) << "\n";
        }
        return 0;
      }
      TermPtr t =
          translate_cbn_flag ? translate_cbn(src) : translate_cbv(src);
      if (translate_io.json_out) {
        json rec;
        rec["term"] = print(t);
        out << rec.dump() << "\n";
      } else {
        out << print(t) << "\n";
      }
      return 0;
    }

    if (*c_dist) {
      TermPtr t = parse_term(dist_io.text(in), dist_io.parse_opts());
      emit_dist(evaluate_dist(t, dist_max), dist_io.json_out, out);
      return 0;
    }

    if (*c_test) {
      test_cfg.typed_only = test_typed;
      return run_test_command(test_property, test_cfg, test_trials, test_json,
                              out, err);
    }
  } catch (const UsageFailure& e) {
    err << "error: " << e.message << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return 1;
  } catch (const DistBudgetExceeded& e) {
    err << "error: " << e.what() << " (unresolved mass " << e.residual.str()
        << ")\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace pel
