#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "isokit/errors.hpp"
#include "isokit/group.hpp"
#include "isokit/subset.hpp"

namespace isokit {

// Group spec text: "Z4", "Z2xZ2xZ3" (case-insensitive, 'x' separator).
inline GroupSpec parse_group(const std::string& text) {
  GroupSpec spec;
  std::size_t i = 0;
  auto expect_z = [&] {
    if (i >= text.size() || (text[i] != 'z' && text[i] != 'Z')) {
      fail(errc::parse_error, "expected 'Z' at position " + std::to_string(i) + " in '" + text + "'");
    }
    i++;
  };
  while (true) {
    expect_z();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      fail(errc::parse_error, "expected a digit at position " + std::to_string(i) + " in '" + text + "'");
    }
    long long n = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      n = n * 10 + (text[i] - '0');
      if (n > kDefaultMaxGroupOrder) break;
      i++;
    }
    if (n < 2) fail(errc::bad_order, "cyclic factor " + std::to_string(n) + " < 2");
    spec.orders.push_back(static_cast<int>(n));
    if (i == text.size()) break;
    if (text[i] != 'x' && text[i] != 'X') {
      fail(errc::parse_error, "expected 'x' at position " + std::to_string(i) + " in '" + text + "'");
    }
    i++;
  }
  return spec;
}

inline std::string render_group(const GroupSpec& spec) {
  std::string s;
  for (std::size_t i = 0; i < spec.orders.size(); i++) {
    if (i) s += 'x';
    s += 'Z' + std::to_string(spec.orders[i]);
  }
  return s;
}

namespace detail {

inline void skip_ws(const std::string& t, std::size_t& i) {
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) i++;
}

inline int parse_int(const std::string& t, std::size_t& i) {
  skip_ws(t, i);
  bool neg = false;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) neg = t[i++] == '-';
  if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i]))) {
    fail(errc::parse_error, "expected an integer at position " + std::to_string(i));
  }
  long long v = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
    v = v * 10 + (t[i] - '0');
    if (v > 1'000'000) fail(errc::parse_error, "integer too large at position " + std::to_string(i));
    i++;
  }
  return static_cast<int>(neg ? -v : v);
}

}  // namespace detail

// Set literal: "{0,3,5}" (flat indices, rank-1 groups) or "{(a,b),...}"
// (tuples matching the group's rank). "{}" is the empty set.
inline GroupSubset parse_set(const std::string& text, const Group& g) {
  std::size_t i = 0;
  detail::skip_ws(text, i);
  if (i >= text.size() || text[i] != '{') fail(errc::parse_error, "expected '{' at position " + std::to_string(i));
  i++;
  GroupSubset out(g);
  detail::skip_ws(text, i);
  if (i < text.size() && text[i] == '}') return out;
  while (true) {
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == '(') {
      i++;
      GroupElement coords;
      while (true) {
        coords.push_back(detail::parse_int(text, i));
        detail::skip_ws(text, i);
        if (i < text.size() && text[i] == ',') {
          i++;
          continue;
        }
        break;
      }
      if (i >= text.size() || text[i] != ')') fail(errc::parse_error, "expected ')' at position " + std::to_string(i));
      i++;
      if (static_cast<int>(coords.size()) != g.rank() && !(g.rank() == 0 && coords.size() == 1)) {
        fail(errc::rank_mismatch, "tuple of arity " + std::to_string(coords.size()) + " in a rank-" +
                                      std::to_string(g.rank()) + " group");
      }
      for (std::size_t k = 0; k < coords.size(); k++) {
        int lim = g.is_product() ? g.factor_orders()[k] : g.order();
        if (coords[k] < 0 || coords[k] >= lim) {
          fail(errc::index_out_of_range, "coordinate " + std::to_string(coords[k]) + " not in [0," +
                                             std::to_string(lim) + ")");
        }
      }
      out.insert(g.index_of(coords));
    } else {
      if (g.rank() > 1) fail(errc::rank_mismatch, "flat indices need a cyclic group; use tuples");
      int v = detail::parse_int(text, i);
      if (v < 0 || v >= g.order()) {
        fail(errc::index_out_of_range, "index " + std::to_string(v) + " not in [0," + std::to_string(g.order()) + ")");
      }
      out.insert(v);
    }
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == ',') {
      i++;
      continue;
    }
    break;
  }
  detail::skip_ws(text, i);
  if (i >= text.size() || text[i] != '}') fail(errc::parse_error, "expected '}' at position " + std::to_string(i));
  i++;
  detail::skip_ws(text, i);
  if (i != text.size()) fail(errc::parse_error, "trailing characters at position " + std::to_string(i));
  return out;
}

// Tuple form for rank >= 2, flat index form for cyclic groups.
inline std::string render_element(const Group& g, int index) {
  if (g.rank() > 1) {
    GroupElement e = g.coords_of(index);
    std::string s = "(";
    for (std::size_t k = 0; k < e.size(); k++) {
      if (k) s += ',';
      s += std::to_string(e[k]);
    }
    return s + ")";
  }
  return std::to_string(index);
}

inline std::string render_set(const GroupSubset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int e) {
    if (!first) out += ',';
    out += render_element(s.group(), e);
    first = false;
  });
  return out + "}";
}

}  // namespace isokit
