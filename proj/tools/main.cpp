// Command line front end: verify, classify, mf and construct subcommands
// over the JSON document formats.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "supercf/io.hpp"

namespace {

using namespace supercf;

constexpr int kExitOk = 0;
constexpr int kExitAxiomViolation = 1;
constexpr int kExitInputError = 2;
constexpr int kExitStructure = 3;  // not semisimple / not split

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot open output file '" + out_path + "'");
  out << text;
}

CFData document_to_cf(const Document& doc) {
  switch (doc.kind) {
    case Document::Kind::CfAlgebra: return doc.cf;
    case Document::Kind::Elementary: return build_elementary(doc.params);
    case Document::Kind::MatrixFactorizationDoc: return mf_to_cf(doc.mf);
  }
  throw InputError("unsupported document kind");
}

int run_verify(const std::string& file, bool json, const std::string& out) {
  const Document doc = parse_document(read_input(file));
  if (doc.kind == Document::Kind::MatrixFactorizationDoc)
    throw InputError("verify expects a cf_algebra or elementary document (use 'mf --verify')");
  const CheckReport report = verify_all(document_to_cf(doc));
  emit(json ? dump_machine(report_to_json(report)) : report_to_text(report), out);
  return report.all_passed() ? kExitOk : kExitAxiomViolation;
}

int run_classify(const std::string& file, std::uint64_t seed, bool json, const std::string& out) {
  const Document doc = parse_document(read_input(file));
  if (doc.kind == Document::Kind::MatrixFactorizationDoc)
    throw InputError("classify expects a cf_algebra or elementary document (use 'mf --classify')");
  const ClassificationReport report = classify(document_to_cf(doc), seed);
  emit(json ? dump_machine(classification_to_json(report)) : classification_to_text(report), out);
  switch (report.verdict) {
    case ClassifyVerdict::Classified: return kExitOk;
    case ClassifyVerdict::AxiomViolation: return kExitAxiomViolation;
    case ClassifyVerdict::NotSemisimple:
    case ClassifyVerdict::NotSplit: return kExitStructure;
  }
  return kExitInputError;
}

int run_mf(const std::string& file, const std::string& mode, std::uint64_t seed, bool json,
           const std::string& out) {
  const Document doc = parse_document(read_input(file));
  if (doc.kind != Document::Kind::MatrixFactorizationDoc)
    throw InputError("mf expects a matrix_factorization document");
  const MatrixFactorization& r = doc.mf;

  if (mode == "dao") {
    DaoResult d;
    try {
      d = check_dao(r);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    emit(json ? dump_machine(dao_to_json(d)) : dao_to_text(d), out);
    return d.vanishes() ? kExitOk : kExitAxiomViolation;
  }
  if (mode == "emit-cf") {
    const CFData cf = mf_to_cf(r);
    emit(dump_machine(cf_to_json(cf)), out);
    return kExitOk;
  }
  if (mode == "verify") {
    const CheckReport report = verify_all(mf_to_cf(r));
    emit(json ? dump_machine(report_to_json(report)) : report_to_text(report), out);
    return report.all_passed() ? kExitOk : kExitAxiomViolation;
  }
  // classify
  const ClassificationReport report = classify(mf_to_cf(r), seed);
  emit(json ? dump_machine(classification_to_json(report)) : classification_to_text(report), out);
  switch (report.verdict) {
    case ClassifyVerdict::Classified: return kExitOk;
    case ClassifyVerdict::AxiomViolation: return kExitAxiomViolation;
    case ClassifyVerdict::NotSemisimple:
    case ClassifyVerdict::NotSplit: return kExitStructure;
  }
  return kExitInputError;
}

ElementaryParams parse_summand_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InputError("summand spec must look like mat:n,m,lambda,mu | q:n,lambda,mu | triv:lambda");
  std::string kind = spec.substr(0, colon);
  std::transform(kind.begin(), kind.end(), kind.begin(), ::tolower);
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);

  try {
    ElementaryParams p;
    if (kind == "triv" && parts.size() == 1) {
      p.kind = ElemKind::Triv;
      p.lambda = Rational::parse(parts[0]);
      return p;
    }
    if (kind == "mat" && parts.size() == 4) {
      p.kind = ElemKind::Mat;
      p.n = std::stoi(parts[0]);
      p.m = std::stoi(parts[1]);
      p.lambda = Rational::parse(parts[2]);
      p.mu = Rational::parse(parts[3]);
      return p;
    }
    if (kind == "q" && parts.size() == 3) {
      p.kind = ElemKind::Q;
      p.n = std::stoi(parts[0]);
      p.lambda = Rational::parse(parts[1]);
      p.mu = Rational::parse(parts[2]);
      return p;
    }
  } catch (const std::exception& e) {
    throw InputError(std::string("bad summand spec '") + spec + "': " + e.what());
  }
  throw InputError("bad summand spec '" + spec +
                   "' (expected mat:n,m,lambda,mu | q:n,lambda,mu | triv:lambda)");
}

int run_construct(const std::vector<std::string>& specs, bool scramble, std::uint64_t seed,
                  const std::string& out) {
  if (specs.empty()) throw InputError("construct needs at least one --summand");
  if (specs.size() == 1 && !scramble) {
    emit(dump_machine(elementary_to_json(parse_summand_spec(specs[0]))), out);
    return kExitOk;
  }
  CFData sum = build_elementary(parse_summand_spec(specs[0]));
  for (std::size_t i = 1; i < specs.size(); ++i)
    sum = direct_sum_cf(sum, build_elementary(parse_summand_spec(specs[i])));
  if (scramble) sum = scramble_cf(sum, seed);
  emit(dump_machine(cf_to_json(sum)), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checker and classifier for semisimple super Cardy-Frobenius algebras "
               "and Landau-Ginzburg matrix factorizations"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the machine-readable report");

  std::string file, out_path;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "run the axiom checkers on a document");
  verify->add_option("file", file, "input document (- for stdin)")->required();
  verify->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* classify_cmd = app.add_subcommand("classify", "decompose into elementary summands");
  classify_cmd->add_option("file", file, "input document (- for stdin)")->required();
  classify_cmd->add_option("--seed", seed, "seed for the randomized idempotent search");
  classify_cmd->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* mf_cmd = app.add_subcommand("mf", "matrix factorization pipelines");
  mf_cmd->add_option("file", file, "matrix_factorization document (- for stdin)")->required();
  bool dao = false, mf_verify = false, mf_classify = false, emit_cf = false;
  mf_cmd->add_flag("--dao", dao, "Euler-characteristic vanishing check (odd variable count)");
  mf_cmd->add_flag("--verify", mf_verify, "assemble the Cardy-Frobenius data and run the checkers");
  mf_cmd->add_flag("--classify", mf_classify, "assemble and classify");
  mf_cmd->add_flag("--emit-cf", emit_cf, "print the assembled cf_algebra document");
  mf_cmd->add_option("--seed", seed, "seed for the randomized idempotent search");
  mf_cmd->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* construct = app.add_subcommand("construct", "emit an elementary or direct-sum document");
  std::vector<std::string> summands;
  bool scramble = false;
  construct->add_option("--summand", summands,
                        "repeatable: mat:n,m,lambda,mu | q:n,lambda,mu | triv:lambda")
      ->required();
  construct->add_flag("--scramble", scramble, "apply a random graded basis change");
  construct->add_option("--seed", seed, "seed for the basis change");
  construct->add_option("-o,--output", out_path, "write the document here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*verify) return run_verify(file, json, out_path);
    if (*classify_cmd) return run_classify(file, seed, json, out_path);
    if (*mf_cmd) {
      const int modes = int(dao) + int(mf_verify) + int(mf_classify) + int(emit_cf);
      if (modes != 1)
        throw InputError("mf needs exactly one of --dao, --verify, --classify, --emit-cf");
      const std::string mode = dao ? "dao" : mf_verify ? "verify" : emit_cf ? "emit-cf" : "classify";
      return run_mf(file, mode, seed, json, out_path);
    }
    if (*construct) return run_construct(summands, scramble, seed, out_path);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UnsupportedShape& e) {
    std::cerr << "input error: unsupported potential shape: " << e.what() << "\n"
              << "supported shapes: univariate W(x) of degree >= 2, or a sum of pure powers\n"
                 "c_i x_i^{a_i} in disjoint variables (a_i >= 2); build wider multivariate\n"
                 "factorizations as tensor products\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
