#include "extremal/verify/certificate.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "extremal/finite/lasserre.hpp"
#include "extremal/verify/certify.hpp"
#include "extremal/verify/errors.hpp"

namespace extremal::verify {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw CertificationError(FailureKind::Malformed, what); }

json rational_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rational rational_from(const json& j) {
  if (!j.is_object() || j.size() != 2 || !j.contains("num") || !j.contains("den") || !j["num"].is_string() || !j["den"].is_string())
    malformed("rational must be {\"num\", \"den\"} strings");
  Integer num, den;
  const std::string ns = j["num"], ds = j["den"];
  if (ns.empty() || ds.empty() || num.set_str(ns, 10) != 0 || den.set_str(ds, 10) != 0) malformed("bad rational digits");
  if (sgn(den) <= 0) malformed("rational denominator must be positive");
  Rational q(num, den);
  q.canonicalize();
  if (q.get_num() != num || q.get_den() != den || num.get_str() != ns || den.get_str() != ds) malformed("rational not in lowest terms");
  return q;
}

json data_json(const Certificate& c) {
  json vectors = json::object(), matrices = json::object(), integers = json::object();
  for (const auto& [name, v] : c.vectors) {
    json arr = json::array();
    for (const auto& q : v) arr.push_back(rational_json(q));
    vectors[name] = arr;
  }
  for (const auto& [name, m] : c.matrices) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) entries.push_back(rational_json(m(i, j)));
    matrices[name] = {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
  }
  for (const auto& [name, lists] : c.integers) integers[name] = lists;
  return {{"vectors", vectors}, {"matrices", matrices}, {"integers", integers}};
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j[key];
}

std::string first_difference(const Certificate& a, const Certificate& b) {
  if (a.problem != b.problem) return "problem";
  if (a.n != b.n || a.d != b.d) return "parameters";
  if (a.certified_bound != b.certified_bound) return "certified_bound";
  if (a.vectors != b.vectors || a.matrices != b.matrices || a.integers != b.integers) return "data";
  if (a.method != b.method) return "method";
  if (a.version != b.version) return "version";
  for (const auto& [key, value] : b.transcript) {
    auto it = a.transcript.find(key);
    if (it == a.transcript.end() || it->second != value) return "transcript." + key;
  }
  return "transcript";
}

const RationalVector& vector_field(const Certificate& c, const std::string& name) {
  auto it = c.vectors.find(name);
  if (it == c.vectors.end()) malformed("missing vector '" + name + "'");
  return it->second;
}

}  // namespace

std::string to_json(const Certificate& c) {
  json transcript = json::object();
  for (const auto& [k, v] : c.transcript) transcript[k] = v;
  const json j = {{"schema", std::string(kCertificateSchema)},
                  {"problem", c.problem},
                  {"n", c.n},
                  {"d", c.d},
                  {"certified_bound", rational_json(c.certified_bound)},
                  {"data", data_json(c)},
                  {"verification", {{"method", c.method}, {"transcript", transcript}}},
                  {"version", c.version}};
  return j.dump(1) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (field(j, "schema") != std::string(kCertificateSchema)) malformed("unknown schema");
    Certificate c;
    c.problem = field(j, "problem").get<std::string>();
    c.n = field(j, "n").get<int>();
    c.d = field(j, "d").get<int>();
    c.certified_bound = rational_from(field(j, "certified_bound"));
    const json& data = field(j, "data");
    for (const auto& [name, arr] : field(data, "vectors").items()) {
      RationalVector v;
      for (const auto& q : arr) v.push_back(rational_from(q));
      c.vectors[name] = std::move(v);
    }
    for (const auto& [name, m] : field(data, "matrices").items()) {
      const int rows = field(m, "rows").get<int>(), cols = field(m, "cols").get<int>();
      const json& entries = field(m, "entries");
      if (rows < 0 || cols < 0 || !entries.is_array() || entries.size() != static_cast<std::size_t>(rows) * cols)
        malformed("matrix '" + name + "' has inconsistent shape");
      RationalMatrix mat(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) mat(i, k) = rational_from(entries[static_cast<std::size_t>(i) * cols + k]);
      c.matrices[name] = std::move(mat);
    }
    for (const auto& [name, lists] : field(data, "integers").items()) c.integers[name] = lists.get<std::vector<std::vector<int>>>();
    const json& verification = field(j, "verification");
    c.method = field(verification, "method").get<std::string>();
    for (const auto& [k, v] : field(verification, "transcript").items()) c.transcript[k] = v.get<std::string>();
    c.version = field(j, "version").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    malformed(std::string("schema violation: ") + e.what());
  }
}

std::string data_digest(const Certificate& c) { return sha256_hex(data_json(c).dump()); }

void seal(Certificate& c) { c.transcript["data_sha256"] = data_digest(c); }

std::string certified_integer(const Certificate& c) { return floor(c.certified_bound).get_str(); }

void store_ldlt(Certificate& c, const std::string& name, const LdltWitness& w) {
  c.integers[name + "_pivots"] = {w.pivots};
  c.vectors[name + "_diagonal"] = w.diagonal;
}

LdltWitness load_ldlt(const Certificate& c, const std::string& name) {
  auto it = c.integers.find(name + "_pivots");
  if (it == c.integers.end() || it->second.size() != 1) malformed("missing pivots for '" + name + "'");
  return {it->second[0], vector_field(c, name + "_diagonal")};
}

Certificate verify_certificate(const Certificate& c) {
  auto digest = c.transcript.find("data_sha256");
  if (digest == c.transcript.end() || digest->second != data_digest(c))
    throw CertificationError(FailureKind::Mismatch, "data digest does not match the stored data");

  Certificate redone;
  if (c.problem == "kissing-lp") {
    redone = certify_univariate(vector_field(c, "f"), c.n, c.d);
  } else if (c.problem == "kissing-three-point") {
    std::vector<RationalMatrix> g;
    for (int k = 0; k <= c.d; ++k) {
      const std::string name = "G_" + std::to_string(k);
      auto it = c.matrices.find(name);
      if (it == c.matrices.end()) malformed("missing matrix '" + name + "'");
      if (!it->second.is_symmetric() || !verify_ldlt(it->second, load_ldlt(c, name)))
        throw CertificationError(FailureKind::NotPsd, "stored LDL^T witness rejected for " + name);
      g.push_back(it->second);
    }
    auto budget = c.transcript.find("box_budget");
    if (budget == c.transcript.end()) malformed("missing box budget");
    redone = certify_trivariate(g, c.n, c.d, std::stoll(budget->second));
  } else if (c.problem == "avoid-orthogonal-sphere") {
    redone = certify_avoid_orthogonal(vector_field(c, "f"), vector_field(c, "dual"), c.n, c.d);
  } else if (c.problem == "lasserre-dual") {
    redone = finite::recertify_lasserre_dual(c);
  } else {
    malformed("unknown problem '" + c.problem + "'");
  }
  if (!(redone == c))
    throw CertificationError(FailureKind::Mismatch, "stored certificate differs from the re-derived one in " + first_difference(c, redone));
  return redone;
}

}  // namespace extremal::verify
