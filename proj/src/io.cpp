#include "liebv/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "liebv/errors.hpp"

namespace liebv {

using nlohmann::json;

namespace {

Scalar coeff_of(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError("coefficient must be a \"p/q\" string");
}

std::size_t index_of(const json& j, std::size_t dim) {
  if (!j.is_number_integer()) throw ParseError("index must be an integer");
  long v = j.get<long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim)
    throw ParseError("index " + std::to_string(v) + " out of range 1.." + std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

const json& array_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("missing array '") + key + "'");
  return j.at(key);
}

void check_row(const json& row, std::size_t len, const char* what) {
  if (!row.is_array() || row.size() != len)
    throw ParseError(std::string(what) + " entries must have " + std::to_string(len) + " fields");
}

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

// Entries listed in a file may give only one of (i, j, k) and (j, i, k); the
// other follows from graded antisymmetry with the sign returned by swap_sign.
std::map<Triple, Scalar> complete(const std::map<Triple, Scalar>& given,
                                  const std::function<int(std::size_t, std::size_t)>& swap_sign,
                                  const char* what) {
  std::map<Triple, Scalar> out = given;
  for (const auto& [key, c] : given) {
    auto [i, j, k] = key;
    Scalar partner = swap_sign(i, j) * c;
    auto it = given.find({j, i, k});
    if (it != given.end()) {
      if (it->second != partner) throw ParseError(std::string(what) + " entries are not graded antisymmetric");
    } else {
      out[{j, i, k}] = partner;
    }
  }
  return out;
}

json algebra_json(const Bialgebra& b) {
  const GradedLie& g = b.algebra;
  json out;
  out["name"] = b.name;
  out["shift_n"] = b.shift;
  json basis = json::array();
  for (const auto& e : g.basis()) {
    json x;
    x["name"] = e.name;
    x["degree"] = e.degree;
    if (e.weight) x["weight"] = *e.weight;
    basis.push_back(x);
  }
  out["basis"] = basis;
  json br = json::array();
  for (const auto& e : g.structure().entries())
    if (e.i <= e.j) br.push_back({e.i + 1, e.j + 1, e.k + 1, to_string(e.value)});
  out["brackets"] = br;
  // phi(e_k) contains c * (e_i (x) e_j)
  auto phi = phi_tensors(g, b.cobracket, b.shift);
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> co;
  const std::size_t n = g.dim();
  for (std::size_t k = 0; k < phi.size(); ++k)
    for (const auto& [ij, c] : phi[k]) co.emplace_back(k, ij / n, ij % n, c);
  std::sort(co.begin(), co.end(), [](const auto& a, const auto& c) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<0>(c), std::get<1>(c), std::get<2>(c));
  });
  json cj = json::array();
  for (const auto& [k, i, j, c] : co)
    if (i <= j) cj.push_back({k + 1, i + 1, j + 1, to_string(c)});
  out["cobrackets"] = cj;
  if (b.form) {
    json f = json::array();
    for (const auto& [ij, c] : b.form->entries)
      if (c != 0) f.push_back({ij.first + 1, ij.second + 1, to_string(c)});
    out["form"] = f;
  }
  if (b.rmatrix) {
    json r = json::array();
    for (const auto& [ij, c] : b.rmatrix->tensor)
      if (c != 0) r.push_back({ij.first + 1, ij.second + 1, to_string(c)});
    out["rmatrix"] = r;
  }
  return out;
}

}  // namespace

Bialgebra parse_algebra(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("top level must be an object");
    Bialgebra b;
    b.name = j.value("name", std::string());
    if (j.contains("shift_n")) {
      if (!j.at("shift_n").is_number_integer()) throw ParseError("shift_n must be an integer");
      b.shift = j.at("shift_n").get<int>();
    }
    std::vector<BasisElement> basis;
    for (const auto& e : array_field(j, "basis")) {
      if (!e.is_object() || !e.contains("name") || !e.contains("degree"))
        throw ParseError("basis entries need name and degree");
      if (!e.at("name").is_string() || !e.at("degree").is_number_integer())
        throw ParseError("basis name must be a string and degree an integer");
      BasisElement be{e.at("name").get<std::string>(), e.at("degree").get<int>(), std::nullopt};
      if (e.contains("weight") && !e.at("weight").is_null()) {
        if (!e.at("weight").is_array()) throw ParseError("weight must be an integer array");
        Weight w;
        for (const auto& x : e.at("weight")) {
          if (!x.is_number_integer()) throw ParseError("weight must be an integer array");
          w.push_back(x.get<int>());
        }
        be.weight = w;
      }
      basis.push_back(be);
    }
    const std::size_t n = basis.size();
    std::vector<int> par;
    for (const auto& e : basis) par.push_back(parity(e.degree));
    const int shift_par = parity(b.shift);
    std::map<Triple, Scalar> given;
    for (const auto& row : array_field(j, "brackets")) {
      check_row(row, 4, "bracket");
      std::size_t a = index_of(row[0], n), bb = index_of(row[1], n), k = index_of(row[2], n);
      if (!given.emplace(Triple{a, bb, k}, coeff_of(row[3])).second) throw ParseError("duplicate bracket entry");
    }
    StructureTensor c(n);
    auto lie_sign = [&](std::size_t a, std::size_t bb) { return -sign_of(par[a] * par[bb]); };
    for (const auto& [key, v] : complete(given, lie_sign, "bracket"))
      if (v != 0) c.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), v);
    given.clear();
    for (const auto& row : j.contains("cobrackets") ? array_field(j, "cobrackets") : json::array()) {
      check_row(row, 4, "cobracket");
      std::size_t k = index_of(row[0], n), a = index_of(row[1], n), bb = index_of(row[2], n);
      if (!given.emplace(Triple{a, bb, k}, coeff_of(row[3])).second) throw ParseError("duplicate cobracket entry");
    }
    auto co_sign = [&](std::size_t a, std::size_t bb) { return -sign_of(par[a] * par[bb] + shift_par); };
    std::vector<std::map<std::size_t, Scalar>> acc(n);
    for (const auto& [key, v] : complete(given, co_sign, "cobracket"))
      if (v != 0) acc[std::get<2>(key)][std::get<0>(key) * n + std::get<1>(key)] = v;
    std::vector<Tensor2> phi(n);
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [ij, v] : acc[k]) phi[k].emplace_back(ij, v);
    try {
      b.algebra = GradedLie(std::move(basis), std::move(c));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    b.cobracket = gamma_from_phi(b.algebra, phi, b.shift);
    if (j.contains("form") && !j.at("form").is_null()) {
      BilinearForm f;
      f.dim = n;
      f.shift = b.shift;
      for (const auto& row : array_field(j, "form")) {
        check_row(row, 3, "form");
        auto key = std::make_pair(index_of(row[0], n), index_of(row[1], n));
        if (f.entries.count(key)) throw ParseError("duplicate form entry");
        f.entries[key] = coeff_of(row[2]);
      }
      b.form = f;
    }
    if (j.contains("rmatrix") && !j.at("rmatrix").is_null()) {
      RMatrix r;
      for (const auto& row : array_field(j, "rmatrix")) {
        check_row(row, 3, "rmatrix");
        auto key = std::make_pair(index_of(row[0], n), index_of(row[1], n));
        if (r.tensor.count(key)) throw ParseError("duplicate rmatrix entry");
        r.tensor[key] = coeff_of(row[2]);
      }
      b.rmatrix = r;
    }
    return b;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed algebra file: ") + e.what());
  }
}

Bialgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string emit_algebra(const Bialgebra& b) { return algebra_json(b).dump(2) + "\n"; }

std::string fingerprint(const Bialgebra& b) {
  std::string data = algebra_json(b).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string version_string() { return LIEBV_VERSION; }

std::string report_json(const Report& r, const std::string& fp) {
  json out;
  out["version"] = version_string();
  out["fingerprint"] = fp;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"witness", c.witness}});
  out["checks"] = checks;
  json tables = json::array();
  for (const auto& t : r.tables)
    tables.push_back({{"name", t.name}, {"truncation", t.truncation}, {"columns", t.columns}, {"rows", t.rows}});
  out["tables"] = tables;
  return out.dump(2) + "\n";
}

std::string report_text(const Report& r, const std::string& fp) {
  std::ostringstream os;
  os << "liebv " << version_string() << "\n";
  if (!fp.empty()) os << "fingerprint " << fp << "\n";
  if (!r.checks.empty()) {
    std::size_t w = 0;
    for (const auto& c : r.checks) w = std::max(w, c.name.size());
    os << "\nchecks\n";
    for (const auto& c : r.checks) {
      std::string s = std::string("  ") + (c.passed ? "PASS" : "FAIL") + "  " + c.name +
                      std::string(w - c.name.size(), ' ');
      if (!c.detail.empty()) s += "  " + c.detail;
      if (!c.witness.empty()) {
        s += "  witness:";
        for (std::size_t k = 0; k < c.witness.size(); ++k) s += (k ? ", " : " ") + c.witness[k];
      }
      s.erase(s.find_last_not_of(' ') + 1);
      os << s << "\n";
    }
  }
  for (const auto& t : r.tables) {
    os << "\n" << t.name;
    if (!t.truncation.empty()) os << "  [" << t.truncation << "]";
    os << "\n";
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& row : t.rows)
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& row) {
      std::string s = " ";
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
        s += " " + row[c];
        if (c + 1 < row.size()) s += std::string(width[c] - row[c].size(), ' ');
      }
      s.erase(s.find_last_not_of(' ') + 1);
      os << s << "\n";
    };
    line(t.columns);
    if (t.rows.empty()) os << "  (no rows)\n";
    for (const auto& row : t.rows) line(row);
  }
  return os.str();
}

}  // namespace liebv
