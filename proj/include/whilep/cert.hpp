#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "whilep/live.hpp"

namespace whilep {

enum class Rule {
  Skip,
  AssD1,
  AssD2,
  ConD1,
  ConD2,
  LokD1,
  LokD2,
  MutD1,
  MutD2,
  DisD,
  SeqD,
  IfD,
  WhlD,
  CsqD,
};

inline constexpr Rule kAllRules[] = {Rule::Skip,  Rule::AssD1, Rule::AssD2, Rule::ConD1, Rule::ConD2,
                                     Rule::LokD1, Rule::LokD2, Rule::MutD1, Rule::MutD2, Rule::DisD,
                                     Rule::SeqD,  Rule::IfD,   Rule::WhlD,  Rule::CsqD};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
std::size_t rule_arity(Rule r);

// S : (pts, lsh) -> (pts', lsh') ~> S'
struct Judgment {
  Stmt original;
  LshType pre;
  LshType post;
  Stmt residual;
  bool operator==(const Judgment&) const = default;
};

struct Derivation {
  Rule rule;
  Judgment judgment;
  std::vector<Derivation> premises;
  bool operator==(const Derivation&) const = default;
};

// A derivation plus what is needed to re-check it on its own.
struct Certificate {
  std::int64_t widen = 3;
  LiveSet live_out;
  Derivation derivation;
  bool operator==(const Certificate&) const = default;
};

struct CheckResult {
  bool accepted = true;
  // Dotted premise path of the first failing node in pre-order, e.g. "root.1.0".
  std::string path;
  std::string reason;

  explicit operator bool() const { return accepted; }
};

// Re-validates every rule application of the derivation.
CheckResult check(const Derivation& d, const WidenConfig& cfg = {});

// check() plus the certificate-level facts: the root post live set is
// live_out and, when a program is given, the root judges that program from
// the bottom points-to type.
CheckResult check_certificate(const Certificate& c, const Stmt* program = nullptr);

class FormatError : public std::runtime_error {
 public:
  FormatError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Deterministic: equal certificates serialize to identical bytes.
std::string serialize(const Certificate& c);
Certificate deserialize(std::string_view doc);

}  // namespace whilep
