#include "whilep/io.hpp"

#include <cctype>
#include <stdexcept>

namespace whilep {
namespace {

Json addr_list(const AddrSet& as) {
  Json out = Json::array();
  for (const auto& a : as) out.push_back(to_string(a));
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

Json pts_to_json(const PtsType& p) {
  Json out = Json::object();
  for (const auto& [k, img] : p.env()) out[to_string(k)] = addr_list(img);
  return out;
}

Json live_to_json(const LiveSet& live) {
  Json out = Json::array();
  for (const auto& k : live) out.push_back(to_string(k));
  return out;
}

Json state_to_json(const RegularState& st) {
  Json stack = Json::object();
  for (const auto& [x, v] : st.stack) stack[x] = to_string(v);
  Json heap = Json::object();
  for (const auto& [a, v] : st.heap) heap[to_string(a)] = to_string(v);
  return Json{{"stack", stack}, {"heap", heap}};
}

Key key_from_string(const std::string& s) {
  if (auto a = parse_address(s)) return *a;
  if (is_identifier(s)) return s;
  throw std::invalid_argument("not a variable or address: '" + s + "'");
}

PtsType pts_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("points-to type must be an object");
  PtsType p;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_array()) throw std::invalid_argument("image of '" + k + "' must be an array");
    AddrSet img;
    for (const auto& e : v) {
      if (!e.is_string()) throw std::invalid_argument("image of '" + k + "' must list addresses");
      auto a = parse_address(e.get<std::string>());
      if (!a) throw std::invalid_argument("bad address '" + e.get<std::string>() + "'");
      img.insert(*a);
    }
    p.set(key_from_string(k), std::move(img));
  }
  return p;
}

LiveSet live_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("live set must be an array");
  LiveSet out;
  for (const auto& e : j) {
    if (!e.is_string()) throw std::invalid_argument("live set entries must be strings");
    out.insert(key_from_string(e.get<std::string>()));
  }
  return out;
}

}  // namespace whilep
