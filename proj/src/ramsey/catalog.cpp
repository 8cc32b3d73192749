#include "ramsey/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "ramsey/assets.hpp"
#include "ramsey/text.hpp"

namespace ramsey {

namespace {

constexpr std::string_view kCliqueFormula = "K2-Kk";
constexpr std::string_view kPathFormula = "C4-Pk";

// k when t is isomorphic to K_k.
std::optional<int> clique_order(const Target& t) {
  int k = t.vertex_count();
  if (k < 2 || t.edge_count() != k * (k - 1) / 2) return std::nullopt;
  return k;
}

std::optional<int> path_order(const Target& t) {
  int k = t.vertex_count();
  if (k < 2 || !same_graph(t, Target::path(k))) return std::nullopt;
  return k;
}

}  // namespace

bool KnownValue::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::pair<int, int> c4_path_bounds(int k) {
  if (k < 6) throw Error(ErrorCode::InvalidArgument, "the C4 versus Pk bounds need k >= 6");
  return {k <= 7 ? 2 * k - 1 : 2 * k - 2, 3 * k - 5};
}

BoundsCatalog BoundsCatalog::parse(std::string_view text) {
  BoundsCatalog cat;
  LineReader reader(text);
  while (auto line = reader.next()) {
    const auto& tok = line->tokens;
    if (tok[0] == "value") {
      if (tok.size() < 6) throw reader.error("expected `value <red> <blue> <lower> <upper> <source> [flags]`");
      KnownValue v;
      v.red = tok[1];
      v.blue = tok[2];
      Target::parse(v.red);
      Target::parse(v.blue);
      v.lower = parse_int(tok[3], reader);
      v.upper = parse_int(tok[4], reader);
      if (v.lower > v.upper) throw reader.error("lower bound above upper bound");
      v.source = tok[5];
      v.flags.assign(tok.begin() + 6, tok.end());
      cat.values_.push_back(std::move(v));
    } else if (tok[0] == "formula") {
      if (tok.size() != 3) throw reader.error("expected `formula <name> <source>`");
      if (tok[1] != kCliqueFormula && tok[1] != kPathFormula) throw reader.error("unknown formula `" + tok[1] + "`");
      cat.formulas_.emplace_back(tok[1], tok[2]);
    } else {
      throw reader.error("unknown entry `" + tok[0] + "`");
    }
  }
  return cat;
}

const BoundsCatalog& BoundsCatalog::bundled() {
  static const BoundsCatalog cat = parse(assets::kBounds);
  return cat;
}

bool BoundsCatalog::has_formula(std::string_view name) const {
  return std::any_of(formulas_.begin(), formulas_.end(), [&](const auto& f) { return f.first == name; });
}

std::optional<KnownValue> BoundsCatalog::lookup(const Target& red, const Target& blue) const {
  for (const auto& v : values_) {
    const Target r = Target::parse(v.red);
    const Target b = Target::parse(v.blue);
    if ((same_graph(r, red) && same_graph(b, blue)) || (same_graph(r, blue) && same_graph(b, red))) return v;
  }
  for (const auto& [name, source] : formulas_) {
    for (int flip = 0; flip < 2; ++flip) {
      const Target& g = flip ? blue : red;
      const Target& h = flip ? red : blue;
      if (name == kCliqueFormula) {
        auto a = clique_order(g);
        auto k = clique_order(h);
        if (a == 2 && k) {
          int value = *k * (*k - 1) / 2;
          return KnownValue{"K2", "K" + std::to_string(*k), value, value, source, {}};
        }
      } else if (name == kPathFormula) {
        auto k = path_order(h);
        if (same_graph(g, Target::cycle(4)) && k && *k >= 6) {
          auto [lo, hi] = c4_path_bounds(*k);
          return KnownValue{"C4", "P" + std::to_string(*k), lo, hi, source, {}};
        }
      }
    }
  }
  return std::nullopt;
}

std::string BoundsCatalog::describe() const {
  std::ostringstream os;
  for (const auto& [name, source] : formulas_) {
    if (name == kCliqueFormula) {
      os << "r(K2,Kk) = C(k,2)  [" << source << "]\n";
    } else {
      os << "2k-1 <= r(C4,Pk) <= 3k-5 for k in {6,7}; 2k-2 <= r(C4,Pk) <= 3k-5 for k >= 8  [" << source << "]\n";
    }
  }
  for (const auto& v : values_) {
    os << "r(" << v.red << ',' << v.blue << ") ";
    if (v.exact()) {
      os << "= " << v.lower;
    } else {
      os << "in [" << v.lower << ',' << v.upper << ']';
    }
    os << "  [" << v.source;
    for (const auto& f : v.flags) os << ", " << f;
    os << "]\n";
  }
  return os.str();
}

}  // namespace ramsey
