#ifndef TWOBRIDGE_IO_HPP
#define TWOBRIDGE_IO_HPP

#include "cobordism.hpp"
#include "sigtables.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>

namespace twobridge {

constexpr int kSchemaVersion = 1;

inline nlohmann::json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

inline std::string row_csv_body(int c, const SignatureRow& row) {
  std::string body;
  for (const auto& [sg, n] : row) body += std::to_string(c) + "," + std::to_string(sg) + "," + n.str() + "\n";
  return body;
}

inline std::string row_csv(int c, const SignatureRow& row, Provenance p) {
  const std::string body = row_csv_body(c, row);
  return "# twobridge sig-table schema=" + std::to_string(kSchemaVersion) + " c=" + std::to_string(c) +
         " provenance=" + provenance_name(p) + " fnv1a=" + hex64(fnv1a(body)) + "\nc,sigma,count\n" + body;
}

struct CachedRow {
  SignatureRow row;
  Provenance provenance = Provenance::Enumerated;
};

// nullopt on any mismatch: schema, crossing number, checksum, or row contents
inline std::optional<CachedRow> parse_row_csv(int c, const std::string& text) {
  std::istringstream in(text);
  std::string header, columns;
  if (!std::getline(in, header) || !std::getline(in, columns)) return std::nullopt;
  const std::string expect = "# twobridge sig-table schema=" + std::to_string(kSchemaVersion) + " c=" + std::to_string(c) + " provenance=";
  if (header.rfind(expect, 0) != 0 || columns != "c,sigma,count") return std::nullopt;
  std::istringstream hs(header.substr(expect.size()));
  std::string prov, sum;
  hs >> prov >> sum;
  if (prov != "enumerated" && prov != "recursed") return std::nullopt;
  if (sum.rfind("fnv1a=", 0) != 0) return std::nullopt;
  const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (hex64(fnv1a(body)) != sum.substr(6)) return std::nullopt;
  CachedRow out;
  out.provenance = prov == "enumerated" ? Provenance::Enumerated : Provenance::Recursed;
  std::istringstream bs(body);
  std::string line;
  try {
    while (std::getline(bs, line)) {
      const auto a = line.find(','), b = line.find(',', a + 1);
      if (a == std::string::npos || b == std::string::npos) return std::nullopt;
      if (std::stoi(line.substr(0, a)) != c) return std::nullopt;
      out.row[std::stoi(line.substr(a + 1, b - a - 1))] = BigInt(line.substr(b + 1));
    }
    SignatureTable probe;
    probe.set(c, out.row, out.provenance);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return out;
}

inline std::filesystem::path resolve_cache_dir(const std::string& flag) {
  if (const char* env = std::getenv("TB_CACHE_DIR"); env && *env) return env;
  return flag;
}

class SignatureCache {
 public:
  explicit SignatureCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path(int c) const {
    std::ostringstream name;
    name << "sig-c" << std::setw(2) << std::setfill('0') << c << ".csv";
    return dir_ / name.str();
  }

  // absent rows return nullopt quietly; corrupt rows also set `corrupt`
  std::optional<CachedRow> load(int c, bool* corrupt = nullptr) const {
    if (corrupt) *corrupt = false;
    std::ifstream in(path(c), std::ios::binary);
    if (!in) return std::nullopt;
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto row = parse_row_csv(c, text);
    if (!row && corrupt) *corrupt = true;
    return row;
  }

  void store(int c, const SignatureRow& row, Provenance p) const {
    std::filesystem::create_directories(dir_);
    const auto target = path(c);
    const auto tmp = target.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << row_csv(c, row, p);
    }
    std::filesystem::rename(tmp, target);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

inline nlohmann::json totals_json(const TotalsReport& r) {
  return {{"schema", kSchemaVersion},
          {"c", r.c},
          {"tot", big_json(r.tot)},
          {"tot_p", big_json(r.tot_p)},
          {"knots", big_json(r.knots)},
          {"avg_num", big_json(boost::multiprecision::numerator(r.avg_abs_sigma))},
          {"avg_den", big_json(boost::multiprecision::denominator(r.avg_abs_sigma))},
          {"asymptote", format_float(r.asymptote)}};
}

inline nlohmann::json decomposition_json(const DecompositionReport& r) {
  nlohmann::json summands = nlohmann::json::array(), residual = nlohmann::json::array(), cuts = nlohmann::json::array();
  for (std::size_t i = 0; i < r.summands.size(); ++i)
    summands.push_back({{"word", r.summands[i].str()}, {"components", r.summand_components[i]}});
  for (const auto& x : r.residual) residual.push_back(classify(x).canonical_key);
  for (auto o : r.cut_states) cuts.push_back(state_name(o));
  return {{"schema", kSchemaVersion},
          {"word", r.word.str()},
          {"s", r.s},
          {"t", r.t},
          {"r", r.r},
          {"cut_states", cuts},
          {"cut_saddles", r.cut_saddles},
          {"link_saddles", r.link_fix_saddles},
          {"remainder", r.remainder.str()},
          {"remainder_fix_saddles", r.remainder_fix_saddles},
          {"r1_moves", r.r1_moves},
          {"summands", summands},
          {"residual", residual},
          {"g4_lower", r.g4_lower},
          {"g4_upper", r.g4_upper}};
}

inline nlohmann::json diagram_json(const PlatDiagram& d) {
  auto cap = [](Cap c) { return c == Cap::TopMiddle ? "1-2" : "2-3"; };
  nlohmann::json arcs = nlohmann::json::array();
  for (int k = 1; k <= d.crossings(); ++k)
    for (int s = 1; s <= 3; ++s)
      arcs.push_back({{"from", {k - 1, s}}, {"to", {k, swap_strand(d.letters[k - 1], s)}}, {"crossing", k}});
  return {{"schema", kSchemaVersion},
          {"braid", braid_string(d.letters)},
          {"left_cap", cap(d.closure.left)},
          {"right_cap", cap(d.closure.right)},
          {"outer_arc", {{0, cap_free(d.closure.left)}, {d.crossings(), cap_free(d.closure.right)}}},
          {"arcs", arcs}};
}

inline std::string aggregate_csv_header() { return "# twobridge g4-aggregate schema=1\nc,s,mean_upper_num,mean_upper_den,bound_975\n"; }

inline std::string aggregate_csv_line(const CrossingAverage& a) {
  return std::to_string(a.c) + "," + std::to_string(a.s) + "," + BigInt(boost::multiprecision::numerator(a.mean_upper)).str() +
         "," + BigInt(boost::multiprecision::denominator(a.mean_upper)).str() + "," + format_float(a.bound_975) + "\n";
}

}  // namespace twobridge

#endif
