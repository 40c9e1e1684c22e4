#include "whilep/harness.hpp"

namespace whilep {
namespace {

void collect(Derivation& d, std::vector<Derivation*>& out) {
  out.push_back(&d);
  for (auto& p : d.premises) collect(p, out);
}

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

template <class Set>
typename Set::value_type nth(const Set& s, std::size_t i) {
  auto it = s.begin();
  std::advance(it, i);
  return *it;
}

// Candidate new members: every variable and cell the certificate mentions,
// plus a cell nothing mentions.
LiveSet universe(std::vector<Derivation*>& nodes) {
  LiveSet u{Address{1, 9, 1}};
  for (const auto* d : nodes) {
    for (const auto* t : {&d->judgment.pre, &d->judgment.post}) {
      u.insert(t->live.begin(), t->live.end());
      for (const auto& [k, img] : t->pts.env()) {
        u.insert(k);
        u.insert(img.begin(), img.end());
      }
    }
  }
  return u;
}

bool toggle_live(Rng& rng, LiveSet& live, const LiveSet& u, std::string& what) {
  if (!live.empty() && std::bernoulli_distribution(0.5)(rng)) {
    Key k = nth(live, below(rng, live.size()));
    live.erase(k);
    what = "removed " + to_string(k) + " from a live set";
    return true;
  }
  Key k = nth(u, below(rng, u.size()));
  if (!live.insert(k).second) return false;
  what = "added " + to_string(k) + " to a live set";
  return true;
}

bool toggle_pts(Rng& rng, PtsType& p, const LiveSet& u, std::string& what) {
  if (p.env().empty()) return false;
  Key key = nth(p.env(), below(rng, p.env().size())).first;
  AddrSet img = p.image(key);
  if (!img.empty() && std::bernoulli_distribution(0.5)(rng)) {
    Address a = nth(img, below(rng, img.size()));
    img.erase(a);
    what = "removed " + to_string(a) + " from the image of " + to_string(key);
  } else {
    std::vector<Address> cells;
    for (const auto& k : u) {
      if (const auto* a = std::get_if<Address>(&k); a && !img.count(*a)) cells.push_back(*a);
    }
    if (cells.empty()) return false;
    Address a = cells[below(rng, cells.size())];
    img.insert(a);
    what = "added " + to_string(a) + " to the image of " + to_string(key);
  }
  p.set(key, std::move(img));
  return true;
}

}  // namespace

std::vector<Tamper> tamper_corpus(const Certificate& c, Rng& rng, std::size_t count) {
  std::vector<Tamper> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < count * 100) {
    Certificate t = c;
    std::vector<Derivation*> nodes;
    collect(t.derivation, nodes);
    LiveSet u = universe(nodes);
    std::size_t idx = below(rng, nodes.size());
    Derivation& d = *nodes[idx];
    std::string what;
    bool changed = false;
    switch (below(rng, 4)) {
      case 0: {
        Rule r = kAllRules[below(rng, std::size(kAllRules))];
        changed = r != d.rule;
        what = "rule " + std::string(rule_name(d.rule)) + " renamed to " + std::string(rule_name(r));
        d.rule = r;
        break;
      }
      case 1: {
        LshType& side = std::bernoulli_distribution(0.5)(rng) ? d.judgment.pre : d.judgment.post;
        if (idx == 0 && std::bernoulli_distribution(0.1)(rng)) {
          changed = toggle_live(rng, t.live_out, u, what);
          what += " (live_out)";
        } else {
          changed = toggle_live(rng, side.live, u, what);
        }
        break;
      }
      case 2: {
        LshType& side = std::bernoulli_distribution(0.5)(rng) ? d.judgment.pre : d.judgment.post;
        changed = toggle_pts(rng, side.pts, u, what);
        break;
      }
      default: {
        Stmt other = nodes[below(rng, nodes.size())]->judgment.original;
        if (other == d.judgment.residual) other = ast::skip();
        if (other == d.judgment.residual) other = ast::assign("v1", ast::num(0));
        changed = true;
        what = "residual replaced by '" + pretty(other) + "'";
        d.judgment.residual = std::move(other);
        break;
      }
    }
    if (changed && !(t == c)) out.push_back(Tamper{"node " + std::to_string(idx) + ": " + what, std::move(t)});
  }
  return out;
}

}  // namespace whilep
