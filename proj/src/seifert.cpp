#include "qinv/seifert.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "qinv/error.hpp"

namespace qinv {

void validate(const SeifertSymbol& symbol) {
  if (symbol.genus <= 0) {
    throw Error(ErrorCode::kDomain, "genus must be positive, got " + std::to_string(symbol.genus));
  }
  for (const Fiber& f : symbol.fibers) {
    if (f.a < 0) {
      throw Error(ErrorCode::kInvalidFiber,
                  "fiber (" + std::to_string(f.a) + "," + std::to_string(f.b) + ") has negative a");
    }
    if (std::gcd(f.a, f.b) != 1) {
      throw Error(ErrorCode::kInvalidFiber,
                  "fiber (" + std::to_string(f.a) + "," + std::to_string(f.b) + ") is not coprime");
    }
  }
}

void require_finite_fibers(const SeifertSymbol& symbol) {
  validate(symbol);
  for (const Fiber& f : symbol.fibers) {
    if (f.a == 0) {
      throw Error(ErrorCode::kInvalidFiber,
                  "fiber (0," + std::to_string(f.b) + ") is only allowed inside normalize");
    }
  }
}

Rational euler_number(const SeifertSymbol& symbol) {
  require_finite_fibers(symbol);
  Rational e;
  for (const Fiber& f : symbol.fibers) e -= Rational(f.b, f.a);
  return e;
}

Rational orbifold_euler_characteristic(const SeifertSymbol& symbol) {
  require_finite_fibers(symbol);
  Rational chi(2 - 2 * symbol.genus);
  for (const Fiber& f : symbol.fibers) chi -= Rational(1) - Rational(1, f.a);
  return chi;
}

SeifertSymbol double_symbol(const SeifertSymbol& symbol) {
  validate(symbol);
  if (!symbol.has_boundary) {
    throw Error(ErrorCode::kDomain, "double of a closed symbol is undefined");
  }
  SeifertSymbol out{symbol.base, 2 * symbol.genus, symbol.fibers, false};
  for (const Fiber& f : symbol.fibers) out.fibers.push_back({f.a, -f.b});
  return out;
}

SeifertSymbol reverse_orientation(const SeifertSymbol& symbol) {
  SeifertSymbol out = symbol;
  for (Fiber& f : out.fibers) f.b = -f.b;
  return out;
}

SeifertSymbol normalize(const SeifertSymbol& symbol) {
  validate(symbol);
  SeifertSymbol out{symbol.base, symbol.genus, {}, symbol.has_boundary};
  std::int64_t shift = 0;  // Σ k_j over the applied b -> b + k a moves
  for (Fiber f : symbol.fibers) {
    if (f.a == 0) {
      out.fibers.push_back({0, 1});
      continue;
    }
    const std::int64_t r = ((f.b % f.a) + f.a) % f.a;
    shift += (r - f.b) / f.a;
    f.b = r;
    if (f.a == 1) continue;  // now (1,0)
    out.fibers.push_back(f);
  }
  std::sort(out.fibers.begin(), out.fibers.end());
  if (!out.has_boundary && shift != 0) {
    auto last = std::find_if(out.fibers.rbegin(), out.fibers.rend(),
                             [](const Fiber& f) { return f.a >= 1; });
    if (last != out.fibers.rend()) {
      last->b -= shift * last->a;
    } else {
      out.fibers.push_back({1, -shift});
    }
  }
  return out;
}

std::int64_t fiber_lcm(const std::vector<Fiber>& fibers) {
  std::int64_t l = 1;
  for (const Fiber& f : fibers) {
    if (f.a == 0) throw Error(ErrorCode::kInvalidFiber, "lcm over a fiber with a = 0");
    l = std::lcm(l, f.a);
  }
  return l;
}

std::int64_t fiber_product(const std::vector<Fiber>& fibers) {
  std::int64_t p = 1;
  for (const Fiber& f : fibers) {
    if (__builtin_mul_overflow(p, f.a, &p)) {
      throw Error(ErrorCode::kOverflow, "product of fiber orders overflows");
    }
  }
  return p;
}

std::string to_json(const SeifertSymbol& symbol) {
  nlohmann::ordered_json j;
  j["epsilon"] = symbol.base == Base::kOrientable ? "o" : "n";
  j["genus"] = symbol.genus;
  j["fibers"] = nlohmann::json::array();
  for (const Fiber& f : symbol.fibers) j["fibers"].push_back({f.a, f.b});
  j["boundary"] = symbol.has_boundary;
  return j.dump();
}

SeifertSymbol symbol_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed symbol: ") + e.what());
  }
  SeifertSymbol s;
  try {
    const std::string eps = j.at("epsilon").get<std::string>();
    if (eps == "o") {
      s.base = Base::kOrientable;
    } else if (eps == "n") {
      s.base = Base::kNonOrientable;
    } else {
      throw Error(ErrorCode::kParse, "epsilon must be \"o\" or \"n\", got \"" + eps + "\"");
    }
    s.genus = j.at("genus").get<std::int64_t>();
    for (const auto& pair : j.at("fibers")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(ErrorCode::kParse, "each fiber must be a pair [a, b]");
      }
      s.fibers.push_back({pair[0].get<std::int64_t>(), pair[1].get<std::int64_t>()});
    }
    s.has_boundary = j.at("boundary").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed symbol: ") + e.what());
  }
  validate(s);
  return s;
}

std::string to_string(const SeifertSymbol& symbol) {
  std::ostringstream os;
  os << '(' << (symbol.base == Base::kOrientable ? 'o' : 'n') << ',' << symbol.genus;
  char sep = ';';
  for (const Fiber& f : symbol.fibers) {
    os << sep << '(' << f.a << ',' << f.b << ')';
    sep = ',';
  }
  if (symbol.has_boundary) os << ";bdry";
  os << ')';
  return os.str();
}

}  // namespace qinv
