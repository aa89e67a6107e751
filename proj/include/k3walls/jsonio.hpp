#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lattice.hpp"

namespace k3walls {

using ordered_json = nlohmann::ordered_json;

// Integers stay JSON numbers inside the 53-bit safe range and become decimal
// strings beyond it, so every consumer round-trips exactly.
inline ordered_json json_int(const Int& x) {
  static const Int kSafe = (Int(1) << 53) - 1;
  if (x <= kSafe && x >= -kSafe) return static_cast<long long>(x);
  return x.str();
}

inline std::string int_str(const Int& x) { return x.str(); }

// {"num":"p","den":"q"} in lowest terms, q > 0.
inline ordered_json json_rat(const Rat& x) {
  ordered_json j;
  j["num"] = rat_num(x).str();
  j["den"] = rat_den(x).str();
  return j;
}

inline ordered_json json_vec(const Vec& v) {
  ordered_json j = ordered_json::array();
  for (const auto& x : v) j.push_back(json_int(x));
  return j;
}

inline ordered_json json_ratvec(const RatVec& v) {
  ordered_json j = ordered_json::array();
  for (const auto& x : v) j.push_back(json_rat(x));
  return j;
}

inline Int int_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("not an integer: " + j.dump());
    }
  }
  throw InputError("expected integer or decimal string, got " + j.dump());
}

inline Mat mat_from_json(const ordered_json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (array of arrays)");
  Mat m;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("expected a matrix (array of arrays)");
    Vec r;
    for (const auto& e : row) r.push_back(int_from_json(e));
    m.push_back(std::move(r));
  }
  return m;
}

inline Int parse_int(const std::string& s) {
  size_t i = 0, n = s.size();
  while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  while (n > i && std::isspace(static_cast<unsigned char>(s[n - 1]))) --n;
  size_t j = i;
  if (j < n && (s[j] == '+' || s[j] == '-')) ++j;
  if (j == n) throw InputError("not an integer: '" + s + "'");
  for (size_t k = j; k < n; ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw InputError("not an integer: '" + s + "'");
  std::string digits = s.substr(j, n - j);
  Int val(digits);
  return (i < n && s[i] == '-') ? -val : val;
}

inline Rat parse_rat(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InputError("rational with zero denominator: '" + s + "'");
  return make_rat(num, den);
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// "1,0,-6" -> integer vector
inline Vec parse_vec(const std::string& s) {
  Vec v;
  for (const auto& p : split_on(s, ',')) v.push_back(parse_int(p));
  return v;
}

// "1,0,-6" or "1/2,0,-6" -> rational vector
inline RatVec parse_ratvec(const std::string& s) {
  RatVec v;
  for (const auto& p : split_on(s, ',')) v.push_back(parse_rat(p));
  return v;
}

// "r1;r2;..." -> list of rational vectors
inline std::vector<RatVec> parse_region(const std::string& s) {
  std::vector<RatVec> rays;
  for (const auto& p : split_on(s, ';'))
    if (!p.empty()) rays.push_back(parse_ratvec(p));
  return rays;
}

inline Lattice lattice_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("lattice JSON must be an object with a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gram") {
    if (!j.contains("gram")) throw InputError("lattice kind \"gram\" requires a \"gram\" field");
    Lattice L = make_lattice(mat_from_json(j.at("gram")));
    if (j.contains("rank") && j.at("rank").get<long long>() != static_cast<long long>(L.rank()))
      throw InputError("lattice \"rank\" field disagrees with the gram matrix size");
    return L;
  }
  if (kind == "mukai_from_ns") {
    if (!j.contains("ns_gram"))
      throw InputError("lattice kind \"mukai_from_ns\" requires an \"ns_gram\" field");
    return mukai_from_ns(mat_from_json(j.at("ns_gram")));
  }
  throw InputError("unknown lattice kind '" + kind + "' (expected gram or mukai_from_ns)");
}

// Inline JSON (first non-space character '{') or a path to a JSON file.
inline Lattice parse_lattice(const std::string& arg) {
  size_t i = 0;
  while (i < arg.size() && std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
  std::string text;
  if (i < arg.size() && arg[i] == '{') {
    text = arg;
  } else {
    std::ifstream f(arg);
    if (!f) throw InputError("cannot open lattice file '" + arg + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("lattice argument is not valid JSON");
  return lattice_from_json(j);
}

inline ordered_json lattice_to_json(const Lattice& L) {
  ordered_json j;
  j["kind"] = "gram";
  j["rank"] = L.rank();
  j["gram"] = ordered_json::array();
  for (const auto& row : L.gram) j["gram"].push_back(json_vec(row));
  return j;
}

}  // namespace k3walls
