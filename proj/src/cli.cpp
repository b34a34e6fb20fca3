#include "mhad/cli.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mhad/certificate_json.hpp"
#include "mhad/designs.hpp"
#include "mhad/search.hpp"
#include "mhad/solver.hpp"
#include "mhad/text_io.hpp"

namespace mhad::cli {

namespace {

// Failure that maps straight onto an exit status.
struct Exit {
  int status;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitUsage, "cannot read " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Exit{kExitUsage, "cannot write " + path};
  out << contents;
  if (!out.flush()) throw Exit{kExitUsage, "failed writing " + path};
}

void require_order(std::int64_t n) {
  if (n < 1) throw Exit{kExitUsage, "order must be >= 1"};
}

void require_supported(std::int64_t m) {
  if (!is_supported_modulus(m)) throw Exit{kExitUsage, "unsupported modulus " + std::to_string(m) + " (expected 2..6)"};
}

int cmd_construct(std::int64_t n, std::int64_t m, const std::string& output, const std::string& cert_path,
                  std::ostream& out) {
  require_order(n);
  require_supported(m);
  const auto certificate = decide(n, m);
  if (!cert_path.empty()) write_file(cert_path, serialize_certificate(certificate));
  if (!certificate.exists()) {
    out << explain(certificate);
    return kExitNegative;
  }
  const SignMatrix h = materialize(certificate.recipe(), m);
  write_file(output, format_matrix(h, Modulus(m)));
  out << serialize_certificate(certificate);
  return kExitOk;
}

int verify_matrix_text(const std::string& path, const std::string& text, std::optional<std::int64_t> modulus,
                       std::ostream& out) {
  const auto file = parse_matrix(text);
  const std::int64_t m = modulus.value_or(file.modulus.value());
  if (m != 0 && !is_supported_modulus(m)) throw Exit{kExitUsage, "unsupported modulus " + std::to_string(m)};
  const Modulus mod(m);
  const auto n = file.matrix.order();
  if (auto bad = first_violation(file.matrix, mod)) {
    out << path << ": not an MH(" << n << "," << m << "): rows " << bad->row_a + 1 << " and " << bad->row_b + 1
        << " have inner product " << bad->dot << " == " << mod.reduce(bad->dot) << " (mod " << m << ")\n";
    return kExitNegative;
  }
  out << path << ": verified MH(" << n << "," << m << ")\n";
  return kExitOk;
}

int verify_design_text(const std::string& path, const std::string& text, std::optional<std::int64_t> modulus,
                       std::ostream& out) {
  const auto file = parse_design(text);
  if (modulus) {
    if (*modulus < 2) throw Exit{kExitUsage, "design modulus must be >= 2"};
    if (auto p = infer_params(file.matrix, *modulus)) {
      out << path << ": verified " << p->to_string() << " design\n";
      return kExitOk;
    }
    out << path << ": not a modular design mod " << *modulus << '\n';
    return kExitNegative;
  }
  if (verify_design(file.matrix, file.params)) {
    out << path << ": verified " << file.params.to_string() << " design\n";
    return kExitOk;
  }
  out << path << ": not a " << file.params.to_string() << " design\n";
  return kExitNegative;
}

int cmd_verify(const std::string& input, const std::string& cert_path, std::optional<std::int64_t> modulus,
               std::ostream& out) {
  if (input.empty() && cert_path.empty()) throw Exit{kExitUsage, "verify needs --input or --cert"};
  int status = kExitOk;
  if (!input.empty()) {
    const auto text = read_file(input);
    try {
      status = text.starts_with("DES") ? verify_design_text(input, text, modulus, out)
                                       : verify_matrix_text(input, text, modulus, out);
    } catch (const ParseError& e) {
      throw Exit{kExitUsage, input + ": " + e.what()};
    }
  }
  if (!cert_path.empty()) {
    Certificate certificate;
    try {
      certificate = certificate_from_json(nlohmann::json::parse(read_file(cert_path)));
    } catch (const nlohmann::json::exception& e) {
      throw Exit{kExitUsage, cert_path + ": " + e.what()};
    } catch (const Error& e) {
      throw Exit{kExitUsage, cert_path + ": " + e.what()};
    }
    const bool ok = check_certificate(certificate);
    out << cert_path << ": certificate for MH(" << certificate.n << "," << certificate.m << ") "
        << (ok ? "checks" : "FAILS") << '\n';
    if (!ok) status = kExitNegative;
  }
  return status;
}

int cmd_decide(std::int64_t n, std::int64_t m, const std::string& cert_path, std::ostream& out) {
  require_order(n);
  require_supported(m);
  const auto certificate = decide(n, m);
  if (!cert_path.empty()) write_file(cert_path, serialize_certificate(certificate));
  out << explain(certificate);
  return certificate.exists() ? kExitOk : kExitNegative;
}

int cmd_search(const SearchSpec& spec, std::ostream& out) {
  const auto outcome = exhaustive(spec);
  out << "MH(" << spec.n << "," << spec.m.value() << ") exhaustive search, mode " << to_string(spec.mode) << '\n';
  out << "examined " << outcome.examined;
  if (!spec.shard) out << " of " << candidate_count(spec.n);
  out << " candidates, solutions " << outcome.solutions;
  if (spec.mode == SearchMode::FirstWitness) out << " (stopped at first)";
  out << ", shards run " << outcome.shards_run << ", resumed " << outcome.shards_resumed << '\n';
  if (outcome.witness) out << "witness:\n" << format_matrix(*outcome.witness, spec.m);
  if (spec.mode == SearchMode::ConfirmNone) return outcome.solutions == 0 ? kExitOk : kExitNegative;
  return outcome.witness ? kExitOk : kExitNegative;
}

int cmd_catalog_list(std::ostream& out) {
  for (auto name : catalog_names()) {
    out << to_string(name);
    if (auto e = catalog_exact_params(name))
      out << " (" << e->v << ',' << e->k << ',' << e->lambda << ")\n";
    else
      out << " (26,1,2;5)\n";
  }
  return kExitOk;
}

int cmd_catalog_show(const std::string& name_text, std::int64_t m, std::ostream& out) {
  const auto name = catalog_name_from_string(name_text);
  if (!name) throw Exit{kExitUsage, "unknown catalog design '" + name_text + "'"};
  if (m < 2) throw Exit{kExitUsage, "design modulus must be >= 2"};
  out << format_design(catalog(*name, m));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and decide m-modular Hadamard matrices", "mhad"};
  app.require_subcommand(1);

  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string output, input, cert_path;
  std::optional<std::int64_t> modulus;

  auto* construct = app.add_subcommand("construct", "Build a verified MH(n,m) and write it to a file");
  construct->add_option("-n,--order", n, "Matrix order")->required();
  construct->add_option("-m,--modulus", m, "Modulus (2..6)")->required();
  construct->add_option("-o,--output", output, "Output matrix file")->required();
  construct->add_option("--emit-cert", cert_path, "Write the JSON certificate here");

  auto* verify = app.add_subcommand("verify", "Re-check a matrix, design or certificate file");
  verify->add_option("-i,--input", input, "Matrix (MH) or design (DES) file");
  verify->add_option("--modulus", modulus, "Override the modulus from the file header");
  verify->add_option("--cert", cert_path, "JSON certificate to re-check");

  auto* decide_cmd = app.add_subcommand("decide", "Decide existence and print the certificate");
  decide_cmd->add_option("-n,--order", n, "Matrix order")->required();
  decide_cmd->add_option("-m,--modulus", m, "Modulus (2..6)")->required();
  decide_cmd->add_option("--emit-cert", cert_path, "Write the JSON certificate here");

  auto* explain_cmd = app.add_subcommand("explain", "Print the recipe tree or obstruction");
  explain_cmd->add_option("-n,--order", n, "Matrix order")->required();
  explain_cmd->add_option("-m,--modulus", m, "Modulus (2..6)")->required();

  SearchSpec spec;
  int search_n = 0;
  std::int64_t search_m = 0;
  std::string mode_text = "first";
  std::optional<std::uint64_t> shard;
  std::string ledger;
  auto* search = app.add_subcommand("search", "Exhaustive search over normalized matrices");
  search->add_option("-n,--order", search_n, "Matrix order")->required();
  search->add_option("-m,--modulus", search_m, "Modulus (0 or >= 2)")->required();
  search->add_option("--mode", mode_text, "first | count | none")->check(CLI::IsMember({"first", "count", "none"}));
  search->add_option("--threads", spec.threads, "Worker threads");
  search->add_option("--shard-bits", spec.shard_bits, "Shard by this many leading bits of the first free row");
  search->add_option("--shard", shard, "Run only this shard index");
  search->add_option("--resume", ledger, "Append-only shard ledger; completed shards are skipped");
  bool full_check = false;
  search->add_flag("--full-check", full_check, "Gram-check every candidate instead of rejecting failed prefixes");

  std::string catalog_name;
  std::int64_t catalog_m = 5;
  auto* catalog_cmd = app.add_subcommand("catalog", "List or print the base designs");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("list", "List catalog designs");
  auto* show = catalog_cmd->add_subcommand("show", "Print a catalog design in DES format");
  show->add_option("name", catalog_name, "Design name")->required();
  show->add_option("-m,--modulus", catalog_m, "Modulus to reduce parameters by");

  std::vector<const char*> argv{"mhad"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mhad: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(n, m, output, cert_path, out);
    if (verify->parsed()) return cmd_verify(input, cert_path, modulus, out);
    if (decide_cmd->parsed()) return cmd_decide(n, m, cert_path, out);
    if (explain_cmd->parsed()) {
      require_order(n);
      require_supported(m);
      const auto certificate = decide(n, m);
      out << explain(certificate);
      return certificate.exists() ? kExitOk : kExitNegative;
    }
    if (search->parsed()) {
      spec.n = search_n;
      if (search_m == 1 || search_m < 0) throw Exit{kExitUsage, "search modulus must be 0 or >= 2"};
      spec.m = Modulus(search_m);
      spec.mode = *search_mode_from_string(mode_text);
      spec.shard = shard;
      spec.prefix_rejection = !full_check;
      if (!ledger.empty()) spec.ledger = ledger;
      return cmd_search(spec, out);
    }
    if (catalog_cmd->parsed()) {
      if (show->parsed()) return cmd_catalog_show(catalog_name, catalog_m, out);
      return cmd_catalog_list(out);
    }
  } catch (const Exit& e) {
    err << "mhad: " << e.message << '\n';
    return e.status;
  } catch (const Error& e) {
    err << "mhad: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mhad::cli
