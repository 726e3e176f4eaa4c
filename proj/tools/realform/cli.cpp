#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "realform/oracle.hpp"

namespace realform::cli {

namespace {

namespace fs = std::filesystem;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InfeasibleSpec:
      return 2;
    case ErrorCode::RepeatedEigenvalues:
    case ErrorCode::NonDiagonalizable:
    case ErrorCode::IncompatibleEigenvalues:
      return 3;
    default:
      return 4;
  }
}

struct Common {
  std::string config;
  std::map<std::string, double> tol_flags;
};

Tolerances resolve(const Common& c, const json& doc_tols) {
  Tolerances tol;
  apply_tolerances(tol, doc_tols);
  if (!c.config.empty()) {
    const json cfg = read_json(c.config);
    if (cfg.contains("tolerances")) apply_tolerances(tol, cfg["tolerances"]);
  }
  json flags = json::object();
  for (const auto& [k, v] : c.tol_flags) flags[k] = v;
  apply_tolerances(tol, flags);
  return tol;
}

MethodChoice parse_method(const std::string& m) {
  static const std::map<std::string, MethodChoice> table{{"auto", MethodChoice::Auto}, {"dim2", MethodChoice::Dim2},
                                                         {"dim3", MethodChoice::Dim3}, {"fg", MethodChoice::FG},
                                                         {"cross", MethodChoice::Cross}, {"direct", MethodChoice::Direct}};
  return table.at(m);
}

int cmd_classify(const std::string& path, const Common& c, std::ostream& out) {
  const InputDocument in = read_input(path);
  const Tolerances tol = resolve(c, in.tolerances);
  json report = json::array();
  for (std::size_t i = 0; i < in.matrices.size(); ++i) {
    EigenSystem es;
    try {
      es = eig(in.matrices[i], tol);
    } catch (const Error& e) {
      throw Error(e.code(), "matrix " + std::to_string(i) + ": " + e.detail());
    }
    json r = to_json(type_transformation(es, tol), es);
    r["index"] = i;
    report.push_back(r);
  }
  out << dump(json{{"matrices", report}});
  return 0;
}

json decide_one(const InputDocument& in, const Tolerances& tol, MethodChoice m, int& code) {
  const Decision d = decide(in.matrices, in.k, tol, m);
  code = d.verdict.answer == Answer::Yes ? 0 : 1;
  return to_json(d);
}

int cmd_decide(const std::string& path, const std::string& batch, const std::string& method, const Common& c,
               std::ostream& out, std::ostream& err) {
  const MethodChoice m = parse_method(method);
  if (batch.empty()) {
    const InputDocument in = read_input(path);
    int code = 0;
    out << dump(decide_one(in, resolve(c, in.tolerances), m, code));
    return code;
  }

  if (!fs::is_directory(batch)) throw ParseError(batch + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(batch))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  json results = json::object();
  int worst = 0;
  for (const auto& f : files) {
    json entry;
    int code = 0;
    try {
      const InputDocument in = read_input(f.string());
      entry = decide_one(in, resolve(c, in.tolerances), m, code);
    } catch (const ParseError& e) {
      code = 2;
      entry["error"] = e.what();
    } catch (const Error& e) {
      code = exit_code(e.code());
      entry["error"] = e.what();
    }
    if (code >= 2) err << f.filename().string() << ": " << entry["error"].get<std::string>() << "\n";
    entry["exit_code"] = code;
    results[f.filename().string()] = entry;
    worst = std::max(worst, code);
  }
  out << dump(results);
  return worst;
}

json cross_json(const std::vector<CrossRatio>& crs) {
  json a = json::array();
  for (const auto& c : crs) {
    json j;
    j["i"] = c.i;
    j["j"] = c.j;
    j["infinite"] = c.infinite;
    // FG normalization is -1 / value with these determinant conventions.
    if (c.infinite) {
      j["value"] = nullptr;
      j["fg_value"] = to_json(cplx(0.0, 0.0));
    } else {
      j["value"] = to_json(c.value);
      j["fg_value"] = std::abs(c.value) > 0 ? to_json(-1.0 / c.value) : json(nullptr);
    }
    a.push_back(j);
  }
  return a;
}

json triple_json(const std::vector<TripleRatio>& trs) {
  json a = json::array();
  for (const auto& t : trs) a.push_back({{"i", t.i}, {"j", t.j}, {"l", t.l}, {"value", to_json(t.value)}});
  return a;
}

Flag eigen_flag(const EigenSystem& es) {
  std::vector<CVector> sp;
  for (const auto& d : es.eigendirections) sp.push_back(d.canonical());
  return Flag{sp};
}

int cmd_coords(const std::string& path, const Common& c, std::ostream& out) {
  const InputDocument in = read_input(path);
  const Tolerances tol = resolve(c, in.tolerances);
  if (in.matrices.size() < 2) throw ParseError("coords needs at least two generators");
  std::vector<EigenSystem> es;
  for (std::size_t i = 0; i < in.matrices.size(); ++i) {
    try {
      es.push_back(eig(in.matrices[i], tol));
    } catch (const Error& e) {
      throw Error(e.code(), "matrix " + std::to_string(i) + ": " + e.detail());
    }
  }

  const Flag A = eigen_flag(es[0]), C = A.reversed();
  const Flag B = eigen_flag(es[1]), D = B.reversed();
  const ProjPoint D1(D.spanning.front());
  json doc;
  doc["k"] = in.k;
  json base;
  base["generators"] = json::array({0, 1});
  base["cross_ratios"] = cross_json(cross_ratio_set(A, ProjPoint(B.spanning.front()), C, D1, tol));
  if (in.k >= 3) {
    base["triple_ratios_ABC"] = triple_json(triple_ratio_set(A, B, C, tol));
    base["triple_ratios_ACD"] = triple_json(triple_ratio_set(A, C, D, tol));
  }
  doc["base"] = base;

  json gens = json::array();
  for (std::size_t g = 2; g < es.size(); ++g) {
    const Flag beta = eigen_flag(es[g]);
    json flags = json::array();
    for (const auto& [name, F] : {std::pair{"beta", beta}, std::pair{"beta'", beta.reversed()}}) {
      json jf;
      jf["flag"] = name;
      jf["cross_ratios"] = cross_json(cross_ratio_set(A, ProjPoint(F.spanning.front()), C, D1, tol));
      if (in.k >= 3) jf["triple_ratios"] = triple_json(triple_ratio_set(A, F, C, tol));
      flags.push_back(jf);
    }
    gens.push_back({{"index", g}, {"flags", flags}});
  }
  doc["generators"] = gens;
  out << dump(doc);
  return 0;
}

struct GenerateArgs {
  int k = 2;
  int hyperbolic = 0, elliptic = 0, mixed = 0;
  std::uint64_t seed = 0;
  bool no_scramble = false;
  int perturb_generator = -1;
  double perturb_magnitude = 0.05;
  std::string out, truth;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  InstanceSpec spec;
  spec.k = a.k;
  spec.mix = {a.hyperbolic, a.elliptic, a.mixed};
  spec.seed = a.seed;
  if (const char* env = std::getenv("REALFORM_SEED")) {
    try {
      spec.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("REALFORM_SEED must be an unsigned integer");
    }
  }
  spec.scramble = a.no_scramble ? Scramble::None : Scramble::RandomGamma;
  if (a.perturb_generator >= 0) spec.perturbation = Perturbation{a.perturb_generator, a.perturb_magnitude};

  const Instance inst = generate(spec);
  const std::string doc = dump(input_document(a.k, inst.matrices));
  json truth;
  truth["answer"] = inst.yes ? "Yes" : "No";
  truth["gamma"] = to_json(inst.gamma_true);
  truth["kinds"] = inst.kinds;
  truth["seed"] = spec.seed;

  if (a.out.empty()) {
    out << doc;
  } else {
    std::ofstream(a.out) << doc;
  }
  const std::string truth_path = !a.truth.empty() ? a.truth : (a.out.empty() ? "" : std::filesystem::path(a.out).replace_extension(".truth.json").string());
  if (!truth_path.empty()) std::ofstream(truth_path) << dump(truth);
  return 0;
}

int cmd_verify(const std::string& path, const std::string& gamma_path, const Common& c, std::ostream& out) {
  const InputDocument in = read_input(path);
  const Tolerances tol = resolve(c, in.tolerances);
  json g = read_json(gamma_path);
  if (g.is_object()) {
    if (!g.contains("gamma") || g["gamma"].is_null()) throw ParseError("gamma file has no \"gamma\" matrix");
    g = g["gamma"];
  }
  const CMatrix gamma = parse_matrix(g, in.k);
  const double r = verify_certificate(in.matrices, gamma);
  const bool pass = r < tol.cert_tol;
  out << dump(json{{"residual", r}, {"pass", pass}});
  return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide simultaneous conjugacy of complex matrices into PGL(k,R)", "realform"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config, "JSON file with a \"tolerances\" object")->check(CLI::ExistingFile);
  for (const char* t : {"deg", "eig", "sep", "angle", "rank", "cr", "cert", "cons"}) {
    const std::string name = t;
    app.add_option_function<double>(
        "--tol-" + name, [&common, name](double v) { common.tol_flags[name + "_tol"] = v; },
        "override " + name + "_tol");
  }

  std::string input, gamma_path, batch, method = "auto";
  auto* classify = app.add_subcommand("classify", "spectral classification of each matrix");
  classify->add_option("input", input)->required();

  auto* dec = app.add_subcommand("decide", "decide simultaneous conjugacy into PGL(k,R)");
  dec->add_option("input", input);
  dec->add_option("--batch", batch, "decide every .json file in a directory");
  dec->add_option("--method", method)->check(CLI::IsMember({"auto", "dim2", "dim3", "fg", "cross", "direct"}));

  auto* coords = app.add_subcommand("coords", "dump cross and triple ratios");
  coords->add_option("input", input)->required();

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "random instance with ground truth");
  gen->add_option("--k", ga.k)->required();
  gen->add_option("--hyperbolic", ga.hyperbolic);
  gen->add_option("--elliptic", ga.elliptic);
  gen->add_option("--mixed", ga.mixed);
  gen->add_option("--seed", ga.seed);
  gen->add_flag("--no-scramble", ga.no_scramble);
  gen->add_option("--perturb-generator", ga.perturb_generator);
  gen->add_option("--perturb-magnitude", ga.perturb_magnitude);
  gen->add_option("--out", ga.out, "write the input document here instead of stdout");
  gen->add_option("--truth", ga.truth, "ground-truth sidecar (default: --out with extension .truth.json)");

  auto* ver = app.add_subcommand("verify", "residual of a conjugating matrix");
  ver->add_option("input", input)->required();
  ver->add_option("gamma", gamma_path, "matrix JSON, or an object with a \"gamma\" field")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*classify) return cmd_classify(input, common, out);
    if (*dec) {
      if (input.empty() == batch.empty()) throw ParseError("decide needs exactly one of an input file or --batch");
      return cmd_decide(input, batch, method, common, out, err);
    }
    if (*coords) return cmd_coords(input, common, out);
    if (*gen) return cmd_generate(ga, out);
    if (*ver) return cmd_verify(input, gamma_path, common, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  }
  return 2;
}

}  // namespace realform::cli
