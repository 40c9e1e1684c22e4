#include "whilep/memstate.hpp"

#include <charconv>
#include <regex>

namespace whilep {

namespace {

// Cells are ordered by (length, instance, index), so the cells of one
// instance are contiguous and a probe per instance suffices.
template <class Container, class Proj>
std::int64_t first_free(const Container& c, std::int64_t n, Proj address_of) {
  std::int64_t t = 1;
  for (auto it = c.lower_bound(Address{n, 1, 1}); it != c.end(); ++t) {
    const Address& a = address_of(*it);
    if (a.length != n || a.instance != t) return t;
    it = c.lower_bound(Address{n, t + 1, 1});
  }
  return t;
}

}  // namespace

std::int64_t fresh_instance(const AddrSet& allocated, std::int64_t n) {
  return first_free(allocated, n, [](const Address& a) -> const Address& { return a; });
}

std::int64_t fresh_instance(const Heap& heap, std::int64_t n) {
  return first_free(heap, n, [](const auto& kv) -> const Address& { return kv.first; });
}

std::optional<Address> addr_shift(const Address& a, std::int64_t k) {
  // |k| > length can never land in range; the check also keeps the sum in range.
  if (k > a.length || k < -a.length) return std::nullopt;
  std::int64_t idx = a.index + k;
  if (idx < 1 || idx > a.length) return std::nullopt;
  return Address{a.length, a.instance, idx};
}

bool value_lt(const Value& a, const Value& b) { return a < b; }

std::int64_t int_op(ArithOp op, std::int64_t a, std::int64_t b) {
  auto ua = static_cast<std::uint64_t>(a);
  auto ub = static_cast<std::uint64_t>(b);
  switch (op) {
    case ArithOp::Add:
      return static_cast<std::int64_t>(ua + ub);
    case ArithOp::Sub:
      return static_cast<std::int64_t>(ua - ub);
    case ArithOp::Mul:
      return static_cast<std::int64_t>(ua * ub);
  }
  return 0;
}

std::string to_string(const Address& a) {
  return "addr(" + std::to_string(a.length) + "," + std::to_string(a.instance) + "," + std::to_string(a.index) + ")";
}

std::string to_string(const Value& v) {
  if (const auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
  if (std::holds_alternative<Nil>(v)) return "nil";
  return to_string(std::get<Address>(v));
}

std::optional<Address> parse_address(const std::string& text) {
  static const std::regex kForm(R"(addr\((\d+),(\d+),(\d+)\))");
  std::smatch m;
  if (!std::regex_match(text, m, kForm)) return std::nullopt;
  Address a;
  std::int64_t* fields[] = {&a.length, &a.instance, &a.index};
  for (int i = 0; i < 3; ++i) {
    const std::string s = m[i + 1].str();
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *fields[i]);
    if (ec != std::errc{}) return std::nullopt;
  }
  if (!a.valid()) return std::nullopt;
  return a;
}

Stack zero_stack(const std::set<VarName>& vars) {
  Stack s;
  for (const auto& v : vars) s.emplace(v, std::int64_t{0});
  return s;
}

}  // namespace whilep
