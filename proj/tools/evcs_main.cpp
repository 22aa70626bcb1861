#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evcs/better.hpp"
#include "evcs/codec.hpp"
#include "evcs/evolving.hpp"
#include "evcs/manifest.hpp"
#include "evcs/pbm.hpp"
#include "evcs/recovery.hpp"
#include "evcs/theory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace evcs;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

// Bad flag combinations and malformed flag values; exits with code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Reserved stream key for share-selection draws; pixel streams use the
// pixel's linear index, which stays far below this.
constexpr std::uint64_t kSelectionStream = 1ull << 40;

std::string share_filename(int t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "share_%04d.pbm", t);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::uint32_t file_crc(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return crc32(bytes);
}

std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      parts.push_back(std::stoi(text.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw UsageError("partition: expected comma-separated integers, got '" + text + "'");
    }
    pos = next + 1;
  }
  if (parts.empty()) throw UsageError("partition: empty");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) throw UsageError("partition: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) {
      throw UsageError("partition: parts must be nonincreasing");
    }
  }
  return parts;
}

std::string partition_str(std::span<const int> parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + "]";
}

// ---- dealer manifest file with the issued-share ledger -------------------

struct StateFile {
  fs::path path;
  json doc;

  fs::path dir() const { return path.parent_path(); }

  static StateFile load(const fs::path& path) {
    StateFile sf;
    sf.path = path;
    sf.doc = json::parse(read_text(path));
    return sf;
  }

  int issued_count() const { return static_cast<int>(doc.at("issued").size()); }

  void verify_issued_files() const {
    for (const auto& entry : doc.at("issued")) {
      fs::path share = dir() / entry.at("name").get<std::string>();
      if (!fs::exists(share)) {
        throw std::runtime_error("issued share missing: " + share.string());
      }
      if (file_crc(share) != entry.at("crc32").get<std::uint32_t>()) {
        throw std::runtime_error("issued share was modified: " + share.string() +
                                 " (refusing to extend)");
      }
    }
  }

  void record_issue(const std::string& name, std::uint32_t crc) {
    doc["issued"].push_back(json{{"name", name}, {"crc32", crc}});
  }

  void replace_dealer(const std::string& manifest_text) {
    json issued = doc.contains("issued") ? doc.at("issued") : json::array();
    doc = json::parse(manifest_text);
    doc["issued"] = std::move(issued);
  }

  void save() const { write_text(path, doc.dump(1) + "\n"); }
};

int group_size_of(const AnyDealer& dealer) {
  if (const auto* kg = std::get_if<EvolvingDealer>(&dealer)) return kg->k();
  if (std::holds_alternative<Better2Dealer>(dealer)) return 2;
  return Better3Dealer::kGroupSize;
}

// ---- share ---------------------------------------------------------------

struct ShareArgs {
  std::string scheme;
  int k = 0;
  int n = 0;
  std::string input;
  std::string out_dir;
  std::uint64_t seed = kDefaultSeed;
};

int run_share(const ShareArgs& args) {
  BinaryImage secret = load_pbm_file(args.input);
  fs::create_directories(args.out_dir);

  std::vector<BinaryImage> shadows;
  std::string manifest;
  if (args.scheme == "kgrouped") {
    int k = args.k;
    int n = args.n > 0 ? args.n : k;
    auto [dealer, out] = EvolvingDealer::init(secret, k, n, args.seed);
    shadows = std::move(out);
    manifest = dealer_save(dealer);
  } else if (args.scheme == "better2") {
    int n = args.n > 0 ? args.n : 2;
    auto [dealer, sc1] = Better2Dealer::init(secret, args.seed);
    shadows.push_back(std::move(sc1));
    for (int t = 2; t <= n; ++t) shadows.push_back(dealer.extend());
    manifest = dealer_save(dealer);
  } else {
    int n = args.n > 0 ? args.n : 4;
    if (n < 4) throw std::runtime_error("better3 issues shares in groups of four; need n >= 4");
    auto [dealer, base] = Better3Dealer::init(secret, args.seed);
    shadows = std::move(base);
    for (int t = 5; t <= n; ++t) shadows.push_back(dealer.extend());
    manifest = dealer_save(dealer);
  }

  StateFile sf;
  sf.path = fs::path(args.out_dir) / "dealer.json";
  sf.doc = json::parse(manifest);
  sf.doc["issued"] = json::array();
  for (std::size_t i = 0; i < shadows.size(); ++i) {
    std::string name = share_filename(static_cast<int>(i) + 1);
    save_pbm_file(sf.dir() / name, shadows[i]);
    sf.record_issue(name, file_crc(sf.dir() / name));
  }
  sf.save();

  std::cout << "wrote " << shadows.size() << " shares to " << args.out_dir << "\n";
  std::cout << "state: " << sf.path.string() << "\n";
  return 0;
}

// ---- extend ----------------------------------------------------------------

int run_extend(const std::string& state_path, int count) {
  StateFile sf = StateFile::load(state_path);
  sf.verify_issued_files();

  json dealer_doc = sf.doc;
  dealer_doc.erase("issued");
  AnyDealer dealer = dealer_load(dealer_doc.dump());

  int issued = sf.issued_count();
  std::visit(
      [&](auto& d) {
        if (d.next_t() != issued + 1) {
          throw std::runtime_error("state/issued mismatch: next_t=" +
                                   std::to_string(d.next_t()) + " but " +
                                   std::to_string(issued) + " shares on disk");
        }
        for (int i = 0; i < count; ++i) {
          int t = d.next_t();
          BinaryImage share = d.extend();
          std::string name = share_filename(t);
          save_pbm_file(sf.dir() / name, share);
          sf.record_issue(name, file_crc(sf.dir() / name));
          std::cout << "issued " << name << "\n";
        }
        sf.replace_dealer(dealer_save(d));
      },
      dealer);
  sf.save();
  return 0;
}

// ---- recover / contrast ----------------------------------------------------

BinaryImage stack_files(const std::vector<std::string>& paths, const std::string& mode) {
  std::vector<BinaryImage> shares;
  shares.reserve(paths.size());
  for (const auto& p : paths) shares.push_back(load_pbm_file(p));
  return mode == "xor" ? stack_xor(shares) : stack_or(shares);
}

int run_recover(const std::vector<std::string>& shares, const std::string& mode,
                const std::string& out) {
  save_pbm_file(out, stack_files(shares, mode));
  std::cout << "wrote " << out << "\n";
  return 0;
}

struct ContrastArgs {
  std::string secret;
  std::string recovered;
  std::string state;
  std::string partition;
  std::string mode = "or";
  std::uint64_t seed = kDefaultSeed;
};

int run_contrast(const ContrastArgs& args) {
  BinaryImage secret = load_pbm_file(args.secret);
  BinaryImage rec;
  std::string selection_info;

  if (!args.recovered.empty()) {
    rec = load_pbm_file(args.recovered);
  } else {
    StateFile sf = StateFile::load(args.state);
    sf.verify_issued_files();
    json dealer_doc = sf.doc;
    dealer_doc.erase("issued");
    AnyDealer dealer = dealer_load(dealer_doc.dump());

    auto parts = parse_partition(args.partition);
    ShareGroupLayout layout(group_size_of(dealer), sf.issued_count());
    PixelRng rng = RandomSource(args.seed).stream(0, kSelectionStream);
    PartitionSelection sel = select_by_partition(layout, parts, rng);

    std::vector<std::string> files;
    for (int idx : sel.indices) {
      files.push_back((sf.dir() / share_filename(idx)).string());
    }
    rec = stack_files(files, args.mode);

    selection_info = "partition=" + partition_str(parts) + "\nindices=";
    for (std::size_t i = 0; i < sel.indices.size(); ++i) {
      if (i) selection_info += ",";
      selection_info += std::to_string(sel.indices[i]);
    }
    selection_info += "\nmode=" + args.mode + "\n";
  }

  ContrastReport rep = empirical_contrast(rec, secret);
  std::cout << selection_info << rep.to_key_value();
  return 0;
}

// ---- theory tables ---------------------------------------------------------

struct CsvSink {
  std::ofstream out;
  bool open = false;

  void start(const std::string& path) {
    out.open(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    open = true;
    out << "k,n_or_t,partition,value_num,value_den,value_float\n";
  }

  void row(int k, const std::string& n_or_t, const std::string& partition,
           const std::optional<Rational>& exact, double value) {
    if (!open) return;
    out << k << "," << n_or_t << ",\"" << partition << "\",";
    if (exact) {
      out << exact->num().str() << "," << exact->den().str();
    } else {
      out << ",";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    out << "," << buf << "\n";
  }
};

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void print_row(const std::vector<std::string>& cells, const std::vector<int>& widths) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::printf("%-*s", widths[i] + 2, cells[i].c_str());
  }
  std::printf("\n");
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<int> widths(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], static_cast<int>(row[i].size()));
    }
  }
  for (const auto& row : rows) print_row(row, widths);
}

int run_theory_table(const std::string& table, int kmax, const std::string& csv_path) {
  CsvSink csv;
  if (!csv_path.empty()) csv.start(csv_path);
  std::vector<std::vector<std::string>> rows;

  if (table == "I") {
    if (kmax < 2 || kmax > 8) throw std::runtime_error("table I supports kmax in [2,8]");
    const std::vector<int> ns{2, 3, 4, 5, 10, 50, 100};
    std::vector<std::string> head{"k/n"};
    for (int n : ns) head.push_back(std::to_string(n));
    head.push_back("inf");
    rows.push_back(head);
    for (int k = 2; k <= kmax; ++k) {
      std::vector<std::string> row{std::to_string(k)};
      for (int n : ns) {
        if (n < k) {
          row.push_back("/");
          continue;
        }
        Rational v = theory::sigma_or(k, n, k);
        row.push_back(n <= 5 ? v.str() : fixed4(v.to_double()));
        csv.row(k, std::to_string(n), "", v, v.to_double());
      }
      Rational lim = theory::alpha_or_infinity(k);
      row.push_back(lim.str());
      csv.row(k, "inf", "", lim, lim.to_double());
      rows.push_back(row);
    }
    std::printf("Theoretical contrast, evolving k-threshold scheme, OR recovery\n\n");
  } else if (table == "II") {
    if (kmax < 2 || kmax > 8) throw std::runtime_error("table II supports kmax in [2,8]");
    rows.push_back({"k", "alpha_inf(XOR)", "float"});
    for (int k = 2; k <= kmax; ++k) {
      Rational v = theory::alpha_xor_infinity(k);
      rows.push_back({std::to_string(k), v.str(), fixed4(v.to_double())});
      csv.row(k, "inf", "", v, v.to_double());
    }
    std::printf("Theoretical contrast, XOR recovery, participant count -> infinity\n\n");
  } else if (table == "III") {
    std::vector<std::string> head{"k\\t"};
    for (int t = 4; t <= 11; ++t) head.push_back(std::to_string(t));
    rows.push_back(head);
    for (int k : {4, 5}) {
      std::vector<std::string> row{std::to_string(k)};
      for (int t = 4; t <= 11; ++t) {
        if (t < k) {
          row.push_back("");
          continue;
        }
        Rational v = theory::alpha_or_stack_t(k, t);
        row.push_back(fixed4(v.to_double()));
        csv.row(k, std::to_string(t), "", v, v.to_double());
      }
      rows.push_back(row);
    }
    std::printf("Theoretical contrast when stacking t shares, OR recovery\n\n");
  } else if (table == "IV") {
    rows.push_back({"scheme", "partition", "contrast", "float"});
    auto add = [&](const std::string& scheme, int k, const std::vector<int>& parts,
                   const std::optional<Rational>& exact, double value) {
      rows.push_back({scheme, partition_str(parts),
                      exact ? exact->str() : "irrational", fixed4(value)});
      csv.row(k, "inf", partition_str(parts), exact, value);
    };
    for (int k : {2, 3, 4, 5}) {
      for (const auto& mu : theory::valid_partitions(k, k, k, k)) {
        Rational v = theory::alpha_or_partition(mu, k);
        add("(" + std::to_string(k) + ",inf) OR", k, mu, v, v.to_double());
      }
    }
    for (int k : {4, 5}) {
      for (const auto& mu : theory::valid_partitions(k, k, k, k)) {
        Rational v = theory::alpha_xor_partition(mu, k);
        add("(" + std::to_string(k) + ",inf) XOR", k, mu, v, v.to_double());
      }
    }
    // Enhanced schemes; the (2,inf) row lists the same-group and
    // cross-group values: [2] -> lambda, [1,1] -> lambda/2.
    add("better2", 2, {2}, std::nullopt, theory::better2_alpha_same_group());
    add("better2", 2, {1, 1}, std::nullopt, theory::better2_alpha_cross_group());
    for (const auto& mu :
         std::vector<theory::Partition>{{3}, {2, 1}, {1, 1, 1}}) {
      Rational v = theory::better3_alpha_config(mu);
      add("better3", 3, mu, v, v.to_double());
    }
    std::printf("Theoretical contrast per valid partition\n\n");
  } else if (table == "VI") {
    rows.push_back({"k", "or(eps=0.005)", "xor(eps=0.05)", "better(eps=0.005)"});
    for (int k = 2; k <= 6; ++k) {
      int n_or = theory::find_convergence_n(theory::curve_rgvcs_or(k), 0.005);
      int n_xor = theory::find_convergence_n(theory::curve_rgvcs_xor(k), 0.05);
      std::string better = "/";
      if (k == 2) better = std::to_string(theory::find_convergence_n(theory::curve_better2(), 0.005));
      if (k == 3) better = std::to_string(theory::find_convergence_n(theory::curve_better3(), 0.005));
      rows.push_back({std::to_string(k), std::to_string(n_or), std::to_string(n_xor), better});
      csv.row(k, std::to_string(n_or), "or", std::nullopt, n_or);
      csv.row(k, std::to_string(n_xor), "xor", std::nullopt, n_xor);
    }
    std::printf("Convergence thresholds n with |alpha(n) - alpha_inf| < eps\n\n");
  } else {
    throw UsageError("unknown table '" + table + "' (supported: I, II, III, IV, VI)");
  }

  print_table(rows);
  return 0;
}

// ---- compare / convergence --------------------------------------------------

theory::ContrastCurve curve_by_tag(const std::string& tag, int k) {
  if (tag == "rgvcs-or") return theory::curve_rgvcs_or(k);
  if (tag == "rgvcs-xor") return theory::curve_rgvcs_xor(k);
  if (tag == "better2") {
    if (k != 2) throw UsageError("better2 is a k=2 scheme");
    return theory::curve_better2();
  }
  if (tag == "better3") {
    if (k != 3) throw UsageError("better3 is a k=3 scheme");
    return theory::curve_better3();
  }
  throw UsageError("unknown scheme tag '" + tag +
                   "' (rgvcs-or, rgvcs-xor, better2, better3)");
}

int run_compare(const std::string& tag_a, const std::string& tag_b, int k, int t_max) {
  auto a = curve_by_tag(tag_a, k);
  auto b = curve_by_tag(tag_b, k);
  auto cmp = theory::compare_curves(a, b, t_max);
  std::printf("A=%s  B=%s\n", a.tag.c_str(), b.tag.c_str());
  std::printf("limits: A=%.6f B=%.6f (%s)\n", a.limit.value(), b.limit.value(),
              cmp.limit_cmp == 0 ? "equal" : (cmp.limit_cmp > 0 ? "A greater" : "B greater"));
  std::printf("verified range: t in [%d, %d]\n", cmp.t_lo, cmp.t_hi);
  std::printf("classification: %s\n", theory::to_string(cmp.order).c_str());
  auto preview = [](const std::vector<int>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size() && i < 12; ++i) {
      if (i) s += ",";
      s += std::to_string(ts[i]);
    }
    if (ts.size() > 12) s += ",...";
    return s.empty() ? std::string("-") : s;
  };
  std::printf("strict witnesses (%zu): %s\n", cmp.strict_witnesses.size(),
              preview(cmp.strict_witnesses).c_str());
  std::printf("dominance violations (%zu): %s\n", cmp.violations.size(),
              preview(cmp.violations).c_str());
  return 0;
}

int run_convergence(const std::string& tag, int k, double epsilon) {
  auto curve = curve_by_tag(tag, k);
  int n = theory::find_convergence_n(curve, epsilon);
  std::printf("curve=%s epsilon=%g limit=%.6f\nn=%d\n", curve.tag.c_str(), epsilon,
              curve.limit.value(), n);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolving k-threshold visual cryptography toolkit"};
  app.require_subcommand(1);

  // share
  ShareArgs share_args;
  auto* share = app.add_subcommand("share", "share a secret image into shadow images");
  share->add_option("--scheme", share_args.scheme, "kgrouped | better2 | better3")
      ->required()
      ->check(CLI::IsMember({"kgrouped", "better2", "better3"}));
  share->add_option("--k", share_args.k, "threshold (kgrouped; fixed for better2/3)");
  share->add_option("--n", share_args.n, "first-phase share count (default: smallest)");
  share->add_option("--in", share_args.input, "secret image (PBM)")->required();
  share->add_option("--out-dir", share_args.out_dir, "output directory")->required();
  share->add_option("--seed", share_args.seed, "64-bit master seed (default 42)");

  // extend
  std::string extend_state;
  int extend_count = 1;
  auto* extend = app.add_subcommand("extend", "issue shares for newly arrived participants");
  extend->add_option("--state", extend_state, "dealer.json path")->required();
  extend->add_option("--count", extend_count, "number of new shares")->check(CLI::PositiveNumber);

  // recover
  std::vector<std::string> recover_shares;
  std::string recover_mode = "or";
  std::string recover_out;
  auto* recover = app.add_subcommand("recover", "stack shares into a recovered image");
  recover->add_option("shares", recover_shares, "share files")->required()->expected(-1);
  recover->add_option("--mode", recover_mode, "or | xor")->check(CLI::IsMember({"or", "xor"}));
  recover->add_option("--out", recover_out, "output PBM")->required();

  // contrast
  ContrastArgs contrast_args;
  auto* contrast = app.add_subcommand("contrast", "measure light transmission and contrast");
  contrast->add_option("--secret", contrast_args.secret, "secret image (PBM)")->required();
  contrast->add_option("--recovered", contrast_args.recovered, "recovered image (PBM)");
  contrast->add_option("--state", contrast_args.state, "dealer.json for partition selection");
  contrast->add_option("--partition", contrast_args.partition, "e.g. 2,1,1");
  contrast->add_option("--mode", contrast_args.mode, "or | xor")
      ->check(CLI::IsMember({"or", "xor"}));
  contrast->add_option("--seed", contrast_args.seed, "seed for the selection draw");

  // theory
  std::string table;
  int kmax = 0;
  std::string csv_path;
  auto* theory_cmd = app.add_subcommand("theory", "regenerate closed-form contrast tables");
  theory_cmd->add_option("--table", table, "I | II | III | IV | VI")->required();
  theory_cmd->add_option("--kmax", kmax, "largest k for tables I/II");
  theory_cmd->add_option("--csv", csv_path, "also write machine-readable CSV");

  // compare
  std::string cmp_a, cmp_b;
  int cmp_k = 2, cmp_tmax = 200;
  auto* compare = app.add_subcommand("compare", "order two schemes per the contrast definition");
  compare->add_option("--a", cmp_a, "scheme tag A")->required();
  compare->add_option("--b", cmp_b, "scheme tag B")->required();
  compare->add_option("--k", cmp_k, "threshold")->required();
  compare->add_option("--tmax", cmp_tmax, "finite verification horizon");

  // convergence
  std::string conv_scheme;
  int conv_k = 2;
  double conv_eps = 0.005;
  auto* convergence = app.add_subcommand("convergence", "smallest n within epsilon of the limit");
  convergence->add_option("--scheme", conv_scheme, "rgvcs-or | rgvcs-xor | better2 | better3")
      ->required();
  convergence->add_option("--k", conv_k, "threshold")->required();
  convergence->add_option("--epsilon", conv_eps, "tolerance (default 0.005)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*share) {
      if (share_args.scheme == "kgrouped") {
        if (share_args.k < 2) throw UsageError("kgrouped needs --k >= 2");
      } else {
        int fixed = share_args.scheme == "better2" ? 2 : 3;
        if (share_args.k != 0 && share_args.k != fixed) {
          throw UsageError(share_args.scheme + " has fixed k=" + std::to_string(fixed));
        }
      }
      return run_share(share_args);
    }
    if (*extend) return run_extend(extend_state, extend_count);
    if (*recover) return run_recover(recover_shares, recover_mode, recover_out);
    if (*contrast) {
      if (contrast_args.recovered.empty() &&
          (contrast_args.state.empty() || contrast_args.partition.empty())) {
        std::cerr << "contrast: need --recovered, or --state together with --partition\n";
        return 2;
      }
      return run_contrast(contrast_args);
    }
    if (*theory_cmd) {
      if (kmax == 0) kmax = table == "II" ? 6 : 4;
      return run_theory_table(table, kmax, csv_path);
    }
    if (*compare) return run_compare(cmp_a, cmp_b, cmp_k, cmp_tmax);
    if (*convergence) return run_convergence(conv_scheme, conv_k, conv_eps);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
