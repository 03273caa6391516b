#include <cmath>
#include <cstdint>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaussmc/catalog.hpp"
#include "gaussmc/gaussian_maxcorr.hpp"
#include "gaussmc/maxcorr.hpp"
#include "gaussmc/phase_space.hpp"
#include "gaussmc/ribbon.hpp"
#include "gaussmc/standard_form.hpp"
#include "gaussmc/tools/io.hpp"
#include "gaussmc/tools/report.hpp"
#include "gaussmc/tools/verify.hpp"

using namespace gaussmc;

namespace {

struct Options {
  std::vector<std::string> inputs;
  double tol = tol::kPsd;
  std::string theta;
  std::string partition;
  int sweep = 11;
  std::uint64_t seed = 42;
  int trials = 500;
  std::optional<double> werner;
  bool gaussian = false;
  bool state_only = false;
  bool cc_vs_ca = false;
  bool lossy_retrieval = false;
  double lambda = 2, nu = 1, tau_a = 1, tau_b = 1;
  std::string name;
  std::vector<std::string> channels;
};

struct Loaded {
  GaussianState<double> state;
  std::string bytes;
};

Loaded load(const std::string& path) {
  std::string bytes;
  if (path == "-") {
    bytes.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    bytes = io::read_file(path);
  }
  try {
    return {io::parse_state(bytes), bytes};
  } catch (const io::InputError& e) {
    throw io::InputError(path + ": " + e.what());
  }
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw io::InputError(std::string(flag) + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw io::InputError(std::string(flag) + " needs at least one value");
  return out;
}

ThetaPoint<double> parse_theta(const std::string& text) {
  const auto v = parse_list(text, "--theta");
  return ThetaPoint<double>(Eigen::Map<const Vector<double>>(v.data(), static_cast<Eigen::Index>(v.size())));
}

ModePartition partition_for(const Options& o, int modes) {
  if (!o.partition.empty()) {
    try {
      return ModePartition::parse(o.partition, modes);
    } catch (const StructuralError& e) {
      throw io::InputError(std::string("--partition: ") + e.what());
    }
  }
  if (modes != 2) throw io::InputError("--partition is required for states with " + std::to_string(modes) + " modes");
  return ModePartition::single_modes(2);
}

Json partition_json(const ModePartition& p) {
  Json j = Json::array();
  for (const auto& party : p.parties()) j.push_back(party);
  return j;
}

Json complex_json(const ComplexVector2<double>& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(Json{v(i).real(), v(i).imag()});
  return j;
}

Json tolerances(const Options& o) {
  return Json{{"psd", o.tol},
              {"symmetry", tol::kSymmetry},
              {"decoupled", tol::kDecoupled},
              {"decoupled_residual", tol::kDecoupledResidual},
              {"verdict", tol::kVerdict}};
}

Json standard_form_json(const StandardFormResult<double>& sf) {
  Json j;
  j["lambdas"] = sf.lambdas;
  j["decoupled"] = sf.decoupled;
  j["decoupled_residual"] = sf.decoupled_residual;
  if (sf.nu) j["nu"] = to_json(Vector<double>(*sf.nu));
  j["rotation_angles"] = sf.rotation_angles;
  j["squeezings"] = sf.squeezings;
  Json blocks = Json::array();
  for (const auto& b : sf.local_symplectics) blocks.push_back(to_json(Matrix<double>(b)));
  j["local_symplectics"] = blocks;
  j["displacement"] = to_json(sf.displacement);
  j["state"] = io::state_to_json(sf.standardized);
  return j;
}

Json verdict_json(const FeasibilityVerdict<double>& v) {
  return Json{{"verdict", to_string(v.verdict)},
              {"measure", to_string(v.measure)},
              {"resource_value", v.resource_value},
              {"target_value", v.target_value}};
}

GaussianState<double> apply_channel_spec(const GaussianState<double>& state, const std::string& spec) {
  Json j;
  try {
    j = Json::parse(spec);
  } catch (const Json::parse_error& e) {
    throw io::InputError(std::string("--channel: ") + e.what());
  }
  if (!j.is_object() || j.value("type", "") != "lossy" || !j.contains("tau") || !j["tau"].is_number() ||
      !j.contains("party")) {
    throw io::InputError("--channel expects {\"type\":\"lossy\",\"tau\":t,\"party\":j or [j,...]}");
  }
  std::vector<int> modes;
  if (j["party"].is_number_integer()) {
    modes.push_back(j["party"].get<int>());
  } else if (j["party"].is_array()) {
    for (const auto& m : j["party"]) {
      if (!m.is_number_integer()) throw io::InputError("--channel: party entries must be integers");
      modes.push_back(m.get<int>());
    }
  } else {
    throw io::InputError("--channel: party must be an integer or an array of integers");
  }
  return lossy_channel(state, std::move(modes), j["tau"].get<double>());
}

Json catalog_state(const Options& o, GaussianState<double>& state) {
  if (o.name == "ca") {
    state = ca_state(o.lambda, o.nu);
  } else if (o.name == "cc") {
    state = cc_state(o.lambda, o.nu);
  } else if (o.name == "tmsv") {
    state = tmsv_state(o.lambda);
  } else if (o.name == "vacuum") {
    state = GaussianState<double>::vacuum(2);
  } else {
    throw io::InputError("unknown catalog entry '" + o.name + "' (expected ca, cc, tmsv or vacuum)");
  }
  Json params = Json::object();
  if (o.name != "vacuum") params["lambda"] = o.lambda;
  if (o.name == "ca" || o.name == "cc") params["nu"] = o.nu;
  return params;
}

// Each command fills report.results; the return value is the exit code.
int run(const std::string& command, const Options& o, RunReport& report) {
  std::string digest_input;
  std::vector<Loaded> in;
  for (const auto& path : o.inputs) {
    in.push_back(load(path));
    digest_input += in.back().bytes;
    digest_input.push_back('\0');
  }
  if (!in.empty()) report.input_digest = sha256_hex(digest_input);
  report.tolerances = tolerances(o);
  Json& r = report.results;

  if (command == "validate") {
    const auto& s = in.at(0).state;
    const auto check = validate_physical(s, o.tol);
    r["modes"] = s.modes();
    r["physical"] = check.physical;
    r["symmetric"] = check.symmetric;
    r["boundary"] = check.boundary;
    r["min_eigenvalue"] = check.min_eigenvalue;
    r["asymmetry"] = check.asymmetry;
    if (check.physical) {
      r["purity"] = purity(s);
      r["classical"] = is_classical(s, o.tol);
      r["min_eigenvalue_classical"] = min_eigenvalue(s.cov() - Matrix<double>::Identity(s.cov().rows(), s.cov().cols()));
    }
    return 0;
  }
  if (command == "standard-form") {
    const auto& s = in.at(0).state;
    r = standard_form_json(s.modes() == 2 ? bipartite_standard_form(s) : local_standard_form(s));
    return 0;
  }
  if (command == "mu") {
    const auto rep = maximal_correlation(in.at(0).state);
    r["mu"] = rep.mu;
    r["decoupled"] = rep.decoupled;
    r["lambdas"] = rep.standard_form.lambdas;
    if (rep.standard_form.nu) r["nu"] = to_json(Vector<double>(*rep.standard_form.nu));
    r["q1"] = to_json(Matrix<double>(rep.q1));
    r["f"] = complex_json(rep.f);
    r["g"] = complex_json(rep.g);
    r["alpha"] = complex_json(rep.alpha);
    r["beta"] = complex_json(rep.beta);
    return 0;
  }
  if (command == "mu-g" || command == "v-param") {
    const auto& s = in.at(0).state;
    const auto p = partition_for(o, s.modes());
    r["partition"] = partition_json(p);
    if (command == "v-param") {
      r["v"] = v_parameter(s, p);
      return 0;
    }
    const auto rep = gaussian_maximal_correlation(s, p);
    r["mu_g"] = rep.mu_g;
    r["multimode"] = rep.multimode;
    r["r_a"] = to_json(rep.r_a);
    r["r_b"] = to_json(rep.r_b);
    return 0;
  }
  if (command == "ribbon-check") {
    const auto& s = in.at(0).state;
    const auto theta = parse_theta(o.theta);
    const auto v = in_ribbon(s, theta, o.tol);
    r["theta"] = to_json(theta.values());
    r["accepted"] = v.accepted;
    r["margin"] = v.margin;
    if (s.modes() == 2) {
      const double mu = maximal_correlation(s).mu;
      r["mu"] = mu;
      r["closed_form_accepted"] = bipartite_ribbon_check(mu, theta(0), theta(1), o.tol);
    }
    return 0;
  }
  if (command == "gaussian-ribbon-check") {
    const auto& s = in.at(0).state;
    const auto theta = parse_theta(o.theta);
    const auto p = o.partition.empty() ? ModePartition::single_modes(s.modes()) : partition_for(o, s.modes());
    const auto v = in_gaussian_ribbon(s, p, theta, o.tol);
    r["partition"] = partition_json(p);
    r["theta"] = to_json(theta.values());
    r["accepted"] = v.accepted;
    r["margin"] = v.margin;
    return 0;
  }
  if (command == "feasibility") {
    if (o.cc_vs_ca) {
      const auto c = cc_to_ca_verdict(o.lambda, o.nu);
      r["lambda"] = o.lambda;
      r["nu"] = o.nu;
      r["mu_cc"] = c.mu_cc;
      r["mu_ca"] = c.mu_ca;
      r["mu_g_cc"] = c.mu_g_cc;
      r["mu_g_ca"] = c.mu_g_ca;
      r["cc_to_ca"] = verdict_json(c.cc_to_ca);
      r["ca_to_cc"] = verdict_json(c.ca_to_cc);
      r["cc_to_ca_gaussian"] = verdict_json(c.cc_to_ca_gaussian);
      return 0;
    }
    if (o.lossy_retrieval) {
      r = Json{{"lambda", o.lambda}, {"nu", o.nu}, {"tau", {o.tau_a, o.tau_b}}};
      r["retrieval"] = verdict_json(lossy_retrieval_verdict(o.lambda, o.nu, o.tau_a, o.tau_b));
      return 0;
    }
    if (in.empty()) throw io::InputError("feasibility needs a resource state file");
    const auto& resource = in.at(0).state;
    Json verdicts = Json::array();
    bool infeasible = false;
    const auto add = [&](const FeasibilityVerdict<double>& v) {
      infeasible = infeasible || v.infeasible();
      verdicts.push_back(verdict_json(v));
    };
    if (o.werner) {
      if (in.size() != 1) throw io::InputError("--werner replaces the target file; give only the resource");
      add(lst_infeasibility(maximal_correlation(resource).mu, werner_mu(*o.werner)));
      r["target"] = Json{{"werner_kappa", *o.werner}};
    } else {
      if (in.size() != 2) throw io::InputError("feasibility needs a resource and a target state (or --werner)");
      const auto& target = in.at(1).state;
      if (resource.modes() == 2 && target.modes() == 2) {
        add(lst_infeasibility(maximal_correlation(resource).mu, maximal_correlation(target).mu));
      }
      const auto pr = partition_for(o, resource.modes());
      const auto pt = partition_for(o, target.modes());
      add(lst_infeasibility(gaussian_maximal_correlation(resource, pr).mu_g,
                            gaussian_maximal_correlation(target, pt).mu_g, Measure::MuG));
    }
    r["verdict"] = infeasible ? "INFEASIBLE" : "UNDECIDED";
    r["verdicts"] = verdicts;
    return 0;
  }
  if (command == "catalog") {
    GaussianState<double> state = GaussianState<double>::vacuum(1);
    r["name"] = o.name;
    r["parameters"] = catalog_state(o, state);
    Json chans = Json::array();
    for (const auto& spec : o.channels) {
      state = apply_channel_spec(state, spec);
      chans.push_back(Json::parse(spec));
    }
    r["channels"] = chans;
    r["state"] = io::state_to_json(state);
    return 0;
  }
  if (command == "verify") {
    if (o.trials < 0) throw io::InputError("--trials must be nonnegative");
    r = run_verify(o.seed, o.trials);
    return r["passed"].get<bool>() ? 0 : 1;
  }
  throw io::InputError("unknown command " + command);
}

int sweep(const Options& o) {
  const auto loaded = load(o.inputs.at(0));
  const auto& s = loaded.state;
  if (o.sweep < 2) throw io::InputError("--sweep needs at least 2 points per axis");
  const auto p = o.partition.empty() ? ModePartition::single_modes(s.modes()) : partition_for(o, s.modes());
  const int m = o.gaussian ? static_cast<int>(p.size()) : s.modes();
  if (std::pow(double(o.sweep), m) > 1e7) throw io::InputError("sweep grid too large");

  std::string out;
  for (int j = 0; j < m; ++j) out += "theta_" + std::to_string(j + 1) + ",";
  out += "accepted,margin\n";
  std::vector<int> k(m, 0);
  const auto fmt = [](double x) { return std::isinf(x) ? std::string(x > 0 ? "inf" : "-inf") : format_number(x); };
  while (true) {
    Vector<double> theta(m);
    for (int j = 0; j < m; ++j) theta(j) = double(k[j]) / (o.sweep - 1);
    const ThetaPoint<double> t(theta);
    const auto v = o.gaussian ? in_gaussian_ribbon(s, p, t, o.tol) : in_ribbon(s, t, o.tol);
    for (int j = 0; j < m; ++j) out += format_number(theta(j)) + ",";
    out += std::string(v.accepted ? "true" : "false") + "," + fmt(v.margin) + "\n";
    int j = m - 1;
    while (j >= 0 && ++k[j] == o.sweep) k[j--] = 0;
    if (j < 0) break;
  }
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal correlation and ribbon tools for Gaussian states"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;
  bool json = true;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "PSD tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "JSON output (default)");
  };
  const auto with_state = [&](const char* name, const char* help, int files = 1) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("state", o.inputs, "state JSON file, - for stdin")->required()->expected(files);
    add_common(sub);
    return sub;
  };

  with_state("validate", "physicality, purity and classicality of a state");
  with_state("standard-form", "local standard form (bipartite for two modes)");
  with_state("mu", "maximal correlation of a two-mode state");
  with_state("mu-g", "Gaussian maximal correlation")->add_option("--partition", o.partition, "parties, e.g. 0,1;2");
  with_state("v-param", "V parameter")->add_option("--partition", o.partition, "parties, e.g. 0,1;2");
  with_state("ribbon-check", "maximal-correlation ribbon membership")
      ->add_option("--theta", o.theta, "comma-separated theta")
      ->required();
  {
    auto* sub = with_state("gaussian-ribbon-check", "Gaussian ribbon membership");
    sub->add_option("--theta", o.theta, "comma-separated theta")->required();
    sub->add_option("--partition", o.partition, "parties, e.g. 0,1;2");
  }
  {
    auto* sub = with_state("ribbon-sweep", "CSV grid of ribbon verdicts");
    sub->add_option("--sweep", o.sweep, "points per axis");
    sub->add_flag("--gaussian", o.gaussian, "sweep the Gaussian ribbon");
    sub->add_option("--partition", o.partition, "parties for --gaussian");
  }
  {
    auto* sub = app.add_subcommand("feasibility", "infeasibility verdicts between states");
    sub->add_option("states", o.inputs, "resource [target] state files")->expected(0, 2);
    sub->add_option("--werner", o.werner, "noisy Bell target with this kappa");
    sub->add_option("--partition", o.partition, "parties for mu_G");
    sub->add_flag("--cc-vs-ca", o.cc_vs_ca, "compare CC and CA families at --lambda, --nu");
    sub->add_flag("--lossy-retrieval", o.lossy_retrieval, "retrieve CA(--lambda, --nu) after losses --tau-a, --tau-b");
    sub->add_option("--lambda", o.lambda);
    sub->add_option("--nu", o.nu);
    sub->add_option("--tau-a", o.tau_a);
    sub->add_option("--tau-b", o.tau_b);
    add_common(sub);
  }
  {
    auto* sub = app.add_subcommand("catalog", "emit a named state");
    sub->add_option("name", o.name, "ca | cc | tmsv | vacuum")->required();
    sub->add_option("--lambda", o.lambda);
    sub->add_option("--nu", o.nu);
    sub->add_option("--channel", o.channels, "{\"type\":\"lossy\",\"tau\":t,\"party\":j}, repeatable");
    sub->add_flag("--state-only", o.state_only, "print only the state document");
    add_common(sub);
  }
  {
    auto* sub = app.add_subcommand("verify", "randomized self-verification suites");
    sub->add_option("--seed", o.seed);
    sub->add_option("--trials", o.trials);
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunReport report;
  for (int i = 1; i < argc; ++i) report.command.push_back(argv[i]);
  try {
    if (command == "ribbon-sweep") return sweep(o);
    const int code = run(command, o, report);
    if (command == "catalog" && o.state_only) {
      std::cout << dump_json(report.results["state"]);
    } else {
      std::cout << dump_json(report.to_json());
    }
    return code;
  } catch (const io::InputError& e) {
    std::cerr << "gaussmc: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "gaussmc: " << e.what() << "\n";
    return 1;
  }
}
