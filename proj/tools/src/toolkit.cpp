#include "nsjet/toolkit.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nsjet/evolutionary.hpp"
#include "nsjet/exprio.hpp"
#include "nsjet/ns_presets.hpp"
#include "nsjet/reduced_complex.hpp"
#include "nsjet/variational.hpp"

namespace nsjet {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int dim = 3;
  std::string constraints = "cpe";
  std::string viscosity = "symbolic";
  std::string format = "text";

  bool structured() const { return format == "structured"; }
  Setting setting() const { return parse_setting(constraints); }
  ReductionContext context() const { return ReductionContext(setting(), dim); }
};

struct Input {
  std::string name;
  std::string text;
};

Input read_input(const std::string& path, std::istream& in) {
  std::stringstream ss;
  if (path.empty() || path == "-") {
    ss << in.rdbuf();
    return {"<stdin>", ss.str()};
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read '" + path + "'");
  ss << file.rdbuf();
  return {path, ss.str()};
}

template <class F>
auto parse_input(const Input& input, F&& parse) {
  try {
    return parse(input.text);
  } catch (const ParseError& e) {
    throw UsageError(input.name + ":" + e.diagnostic(input.text));
  }
}

// Expressions given directly on the command line.
Expr parse_option_expr(const std::string& option, const std::string& text, int dim) {
  return parse_input(Input{option, text}, [&](std::string_view t) { return parse_expr(t, dim); });
}

std::string slot_label(int slot) { return slot == kPressureSlot ? "p" : "u" + std::to_string(slot); }

struct Entry {
  std::string name;
  Expr value;
  bool informational = false;
};

class Emitter {
 public:
  Emitter(const Config& cfg, std::ostream& out, std::string command)
      : cfg_(cfg), out_(out), command_(std::move(command)) {}

  void expr(const Expr& f) {
    if (cfg_.structured()) {
      write({{"command", command_}, {"result", expr_to_json(f)}});
    } else {
      out_ << print_expr(f) << "\n";
    }
  }

  // Named values without a verdict. line is the one-line text rendering.
  void tuple(const std::vector<Entry>& entries, const std::string& line) {
    if (cfg_.structured()) {
      json components = json::object();
      for (const auto& e : entries) components[e.name] = expr_to_json(e.value);
      write({{"command", command_}, {"components", components}});
    } else {
      out_ << line << "\n";
    }
  }

  int report(const std::vector<Entry>& entries) {
    const auto failing = std::count_if(entries.begin(), entries.end(),
                                       [](const Entry& e) { return !e.informational && !e.value.is_zero(); });
    if (cfg_.structured()) {
      json list = json::array();
      for (const auto& e : entries) {
        list.push_back({{"name", e.name},
                        {"zero", e.value.is_zero()},
                        {"informational", e.informational},
                        {"value", expr_to_json(e.value)}});
      }
      write({{"command", command_}, {"passed", failing == 0}, {"residuals", list}});
    } else {
      for (const auto& e : entries) {
        out_ << e.name << (e.informational ? " (informational)" : "") << ": " << print_expr(e.value) << "\n";
      }
      if (failing == 0) {
        out_ << "pass\n";
      } else {
        out_ << "fail: " << failing << " nonzero residual" << (failing == 1 ? "" : "s") << "\n";
      }
    }
    return failing == 0 ? kExitPass : kExitResidual;
  }

  void kernel(const std::vector<ChiTuple>& basis) {
    if (cfg_.structured()) {
      json list = json::array();
      for (const auto& chi : basis) {
        json components = json::object();
        for (const auto& [c, v] : chi.components()) components[chi_component_name(c)] = expr_to_json(v);
        list.push_back(components);
      }
      write({{"command", command_}, {"basis", list}, {"count", basis.size()}});
    } else {
      for (const auto& chi : basis) out_ << print_chi(chi) << "\n";
      out_ << "count: " << basis.size() << "\n";
    }
  }

 private:
  void write(const json& j) { out_ << j.dump() << "\n"; }

  const Config& cfg_;
  std::ostream& out_;
  std::string command_;
};

std::vector<Entry> entries_of(const ResidualReport& r) {
  std::vector<Entry> out;
  for (const auto& e : r.entries) out.push_back({e.name, e.value});
  return out;
}

template <class Tag>
std::vector<Entry> slot_entries(const SlotTuple<Tag>& t, const std::string& velocity_prefix,
                                const std::string& pressure_name) {
  std::vector<Entry> out;
  for (int mu = 1; mu <= t.dim(); ++mu) out.push_back({velocity_prefix + std::to_string(mu), t.slot(mu)});
  out.push_back({pressure_name, t.pressure});
  return out;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_reduce(const Config& cfg, const Input& input, std::ostream& out) {
  const Expr f = parse_input(input, [&](std::string_view t) { return parse_expr(t, cfg.dim); });
  Emitter(cfg, out, "reduce").expr(cfg.context().reduce(f));
  return kExitPass;
}

MultiIndex derivative_index(const Config& cfg, std::optional<int> direction, const std::string& index) {
  if (direction.has_value() == !index.empty()) throw UsageError("tderiv needs exactly one of --direction or --index");
  if (direction) {
    if (*direction < 1 || *direction > cfg.dim) throw UsageError("--direction must lie in 1.." + std::to_string(cfg.dim));
    return MultiIndex::unit(cfg.dim, *direction);
  }
  std::vector<int> e;
  std::stringstream ss(index);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      e.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("--index expects comma-separated integers, got '" + index + "'");
    }
  }
  if (static_cast<int>(e.size()) != cfg.dim) throw UsageError("--index needs " + std::to_string(cfg.dim) + " entries");
  if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; })) throw UsageError("--index entries must be >= 0");
  return MultiIndex(std::span<const int>(e));
}

int cmd_tderiv(const Config& cfg, const Input& input, const MultiIndex& k, std::ostream& out) {
  const Expr f = parse_input(input, [&](std::string_view t) { return parse_expr(t, cfg.dim); });
  const ReductionContext ctx = cfg.context();
  const Expr d = ctx.setting() == Setting::Free ? total_derivative(k, f) : ctx.derivative(k, f);
  Emitter(cfg, out, "tderiv").expr(d);
  return kExitPass;
}

int cmd_euler(const Config& cfg, const Input& input, std::ostream& out) {
  const Expr l = parse_input(input, [&](std::string_view t) { return parse_expr(t, cfg.dim); });
  const Cotuple chi = euler_operator(cfg.dim, l);
  Emitter(cfg, out, "euler").tuple(slot_entries(chi, "chi_u", "chi_p"), print_cotuple(chi));
  return kExitPass;
}

int cmd_helmholtz(const Config& cfg, const Input& input, std::ostream& out) {
  const Cotuple chi = parse_input(input, [&](std::string_view t) { return parse_cotuple(t, cfg.dim); });
  const OperatorCoefficients r = helmholtz_residual(chi);
  std::vector<Entry> entries;
  for (const auto& [key, value] : r.entries()) {
    entries.push_back(
        {"(" + slot_label(key.target) + "," + slot_label(key.source) + "," + key.order.to_string() + ")", value});
  }
  if (entries.empty()) entries.push_back({"helmholtz", Expr()});
  return Emitter(cfg, out, "helmholtz").report(entries);
}

int cmd_symmetry(const Config& cfg, const Input& input, std::ostream& out) {
  const Characteristic f = parse_input(input, [&](std::string_view t) { return parse_characteristic(t, cfg.dim); });
  return Emitter(cfg, out, "symmetry").report(entries_of(symmetry_residuals(cfg.context(), f)));
}

NsInstance build_ns(const Config& cfg) {
  try {
    return ns_build(cfg.dim, Viscosity::parse(cfg.viscosity));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_time_symmetry(const Config& cfg, const Input& input, const std::string& pressure, std::ostream& out) {
  const Characteristic f = parse_input(input, [&](std::string_view t) { return parse_characteristic(t, cfg.dim); });
  const NsInstance ns = build_ns(cfg);
  const EvolutionField e(ns.context, Characteristic(ns.evolution, parse_option_expr("--pressure-component", pressure, cfg.dim)));
  return Emitter(cfg, out, "time-symmetry").report(slot_entries(time_symmetry_residual(e, f), "f", "f"));
}

int cmd_current(const Config& cfg, const Input& input, std::ostream& out) {
  const CurrentTuple j = parse_input(input, [&](std::string_view t) { return parse_current(t, cfg.dim); });
  return Emitter(cfg, out, "current").report({{"divergence", current_divergence(cfg.context(), j)}});
}

int cmd_lemma2(const Config& cfg, const Input& input, std::ostream& out) {
  const ChiTuple chi = parse_input(input, [&](std::string_view t) { return parse_chi(t, Setting::CPE, cfg.dim); });
  return Emitter(cfg, out, "lemma2").report(entries_of(lemma2_residuals(chi)));
}

struct KernelOptions {
  std::string setting;
  AnsatzSpec ansatz;
};

int cmd_kernel(const Config& cfg, const KernelOptions& opts, std::ostream& out) {
  const Setting s = parse_setting(opts.setting.empty() ? cfg.constraints : opts.setting);
  if (s == Setting::Free) throw UsageError("kernel search needs --setting ce or cpe");
  std::vector<ChiTuple> basis;
  try {
    basis = kernel_search(s, cfg.dim, opts.ansatz);
  } catch (const AnsatzTooLarge& e) {
    throw UsageError(std::string(e.what()) + "; raise --max-unknowns to at least " + std::to_string(e.required()));
  }
  Emitter(cfg, out, "kernel").kernel(basis);
  return kExitPass;
}

int cmd_ns_show(const Config& cfg, std::ostream& out) {
  const NsInstance ns = build_ns(cfg);
  std::vector<Entry> entries{{"CE_0", ns.ce0}, {"PE_0", ns.pe0}, {"Q", ns.quadratic}, {"Phi", ns.phi}};
  for (int mu = 1; mu <= ns.dim; ++mu) entries.push_back({"E" + std::to_string(mu), ns.evolution[mu - 1]});
  if (cfg.structured()) {
    Emitter(cfg, out, "ns show").tuple(entries, "");
  } else {
    out << "dim: " << ns.dim << "\nviscosity: " << ns.viscosity.to_string() << "\n";
    for (const auto& e : entries) out << e.name << ": " << print_expr(e.value) << "\n";
  }
  return kExitPass;
}

int cmd_ns_check(const Config& cfg, const std::string& pressure, std::ostream& out) {
  const NsInstance ns = build_ns(cfg);
  std::optional<Expr> candidate;
  if (!pressure.empty()) candidate = parse_option_expr("--pressure-component", pressure, cfg.dim);
  std::vector<Entry> entries;
  for (const auto& c : ns_verify(ns, candidate).checks) entries.push_back({c.name, c.residual, c.informational});
  return Emitter(cfg, out, "ns check").report(entries);
}

// ---------------------------------------------------------------------------
// Command line

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app("Jet-space toolkit for the incompressible Navier-Stokes constraint algebra", "nsjet");
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--dim", cfg.dim, "Spatial dimension m")->check(CLI::Range(2, kMaxDim));
  app.add_option("--constraints", cfg.constraints, "Constraint setting")->check(CLI::IsMember({"free", "ce", "cpe"}));
  app.add_option("--viscosity", cfg.viscosity, "'symbolic' or a positive rational");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::string input;
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Input file, '-' for standard input"); };

  std::function<int()> action;

  auto* reduce = app.add_subcommand("reduce", "Reduce an expression modulo the constraints");
  add_input(reduce);
  reduce->callback([&] { action = [&] { return cmd_reduce(cfg, read_input(input, in), out); }; });

  std::optional<int> direction;
  std::string index;
  auto* tderiv = app.add_subcommand("tderiv", "Total derivative, restricted when constraints apply");
  add_input(tderiv);
  tderiv->add_option("--direction", direction, "Single direction 1..m");
  tderiv->add_option("--index", index, "Multi-index such as 1,0,2");
  tderiv->callback([&] {
    action = [&] { return cmd_tderiv(cfg, read_input(input, in), derivative_index(cfg, direction, index), out); };
  });

  auto* euler = app.add_subcommand("euler", "Euler operator of a Lagrangian");
  add_input(euler);
  euler->callback([&] { action = [&] { return cmd_euler(cfg, read_input(input, in), out); }; });

  std::map<std::string, std::function<int()>> checks{
      {"helmholtz", [&] { return cmd_helmholtz(cfg, read_input(input, in), out); }},
      {"symmetry", [&] { return cmd_symmetry(cfg, read_input(input, in), out); }},
      {"current", [&] { return cmd_current(cfg, read_input(input, in), out); }},
      {"lemma2", [&] { return cmd_lemma2(cfg, read_input(input, in), out); }},
  };
  const std::map<std::string, std::string> check_help{
      {"helmholtz", "Helmholtz residual of a cotuple"},
      {"symmetry", "Symmetry residuals of a characteristic"},
      {"current", "Divergence of a current modulo the constraints"},
      {"lemma2", "Residuals of the reduced cpe system for a chi tuple"},
  };
  for (const auto& [name, run_check] : checks) {
    auto* sub = app.add_subcommand(name, check_help.at(name));
    add_input(sub);
    sub->callback([&action, &run_check = run_check] { action = run_check; });
  }

  std::string pressure_component = "0";
  auto* time_symmetry = app.add_subcommand("time-symmetry", "Residual D_t f - E_* f against the Navier-Stokes field");
  add_input(time_symmetry);
  time_symmetry->add_option("--pressure-component", pressure_component, "Pressure evolution component E");
  time_symmetry->callback([&] {
    action = [&] { return cmd_time_symmetry(cfg, read_input(input, in), pressure_component, out); };
  });

  KernelOptions kernel_opts;
  auto* kernel = app.add_subcommand("kernel", "Basis of the reduced-operator kernel within an ansatz");
  kernel->add_option("--setting", kernel_opts.setting, "ce or cpe (defaults to --constraints)")
      ->check(CLI::IsMember({"ce", "cpe"}));
  kernel->add_option("--max-order", kernel_opts.ansatz.max_order, "Jet order r")->check(CLI::NonNegativeNumber);
  kernel->add_option("--max-degree", kernel_opts.ansatz.max_degree, "Degree d in u and p")->check(CLI::NonNegativeNumber);
  kernel->add_option("--max-x-degree", kernel_opts.ansatz.max_x_degree, "Degree in x")->check(CLI::NonNegativeNumber);
  kernel->add_flag("--include-t", kernel_opts.ansatz.include_t, "Allow a factor t");
  kernel->add_option("--max-shift", kernel_opts.ansatz.max_shift, "Largest i1 carried")->check(CLI::NonNegativeNumber);
  kernel->add_option("--max-unknowns", kernel_opts.ansatz.max_unknowns, "Cap on unknown coefficients")
      ->check(CLI::NonNegativeNumber);
  kernel->callback([&] { action = [&] { return cmd_kernel(cfg, kernel_opts, out); }; });

  std::string ns_pressure;
  auto* ns = app.add_subcommand("ns", "Navier-Stokes presets");
  ns->require_subcommand(1);
  ns->fallthrough();
  auto* ns_show = ns->add_subcommand("show", "Print the preset expressions");
  ns_show->callback([&] { action = [&] { return cmd_ns_show(cfg, out); }; });
  auto* ns_check = ns->add_subcommand("check", "Run the named verification suite");
  ns_check->add_option("--pressure-component", ns_pressure, "Candidate pressure evolution component E");
  ns_check->callback([&] { action = [&] { return cmd_ns_check(cfg, ns_pressure, out); }; });

  std::string kind;
  auto* check = app.add_subcommand("check", "Run a named check: symmetry, current, helmholtz, lemma2 or ns");
  check->add_option("kind", kind, "Check kind")->required()->check(CLI::IsMember({"symmetry", "current", "helmholtz", "lemma2", "ns"}));
  add_input(check);
  check->add_option("--pressure-component", ns_pressure, "Candidate pressure evolution component E (ns)");
  check->callback([&] {
    action = kind == "ns" ? std::function<int()>([&] { return cmd_ns_check(cfg, ns_pressure, out); }) : checks.at(kind);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  return action();
}

}  // namespace

int run_toolkit(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    return run(args, in, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what();
    if (std::string_view(e.what()).back() != '\n') err << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace nsjet
