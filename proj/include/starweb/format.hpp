#pragma once

// Line-oriented text formats.
//
// Cover:
//   tau 2
//   box ones=0 zeros= levels=0..*
//   box ones= zeros=0,1 levels=1..4
//
// Witness (optionally followed by a report block):
//   tau 2
//   horizon 1
//   level 0: 00
//   tail: 00,11
//
// Set mapping:
//   n 3
//   0: 1
//   2: 0,1
//
// '#' starts a comment; blank lines are ignored. The writers emit the
// canonical form, which the readers accept back unchanged.

#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "starweb/cover.hpp"
#include "starweb/cube.hpp"
#include "starweb/errors.hpp"
#include "starweb/setmap.hpp"
#include "starweb/space.hpp"
#include "starweb/witness.hpp"

namespace starweb::format {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

// Non-blank lines with comments stripped.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
  }
  return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s = s.substr(pos + 1);
  }
  return out;
}

inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto w : split(s, ' '))
    if (!(w = trim(w)).empty()) out.push_back(w);
  return out;
}

inline std::size_t parse_number(std::string_view s, std::size_t line,
                                const char* what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end)
    throw ParseError(line, std::string("bad ") + what + " '" +
                               std::string(s) + "'");
  return v;
}

inline std::vector<std::size_t> parse_index_list(std::string_view s,
                                                 std::size_t line) {
  std::vector<std::size_t> out;
  if (trim(s).empty()) return out;
  for (auto item : split(s, ','))
    out.push_back(parse_number(trim(item), line, "index"));
  return out;
}

inline std::string join_points(const PointSet& s) {
  std::string out;
  for (const auto& p : s) {
    if (!out.empty()) out += ',';
    out += p.to_string();
  }
  return out;
}

inline PointSet parse_points(std::string_view s, std::size_t tau,
                             std::size_t line) {
  PointSet out;
  if (trim(s).empty()) return out;
  for (auto item : split(s, ',')) {
    item = trim(item);
    try {
      auto p = CubePoint::parse(item);
      if (p.tau() != tau)
        throw ParseError(line, "point '" + std::string(item) +
                                   "' has wrong length");
      out.insert(p);
    } catch (const InvalidArgument& e) {
      throw ParseError(line, e.what());
    }
  }
  return out;
}

inline std::size_t parse_header(const std::vector<Line>& lines,
                                std::size_t index, std::string_view key) {
  const std::size_t line_no = index < lines.size() ? lines[index].number : 0;
  if (index >= lines.size())
    throw ParseError(line_no, "missing '" + std::string(key) + "' line");
  const auto w = words(lines[index].text);
  if (w.size() != 2 || w[0] != key)
    throw ParseError(line_no, "expected '" + std::string(key) + " <n>'");
  return parse_number(w[1], line_no, std::string(key).c_str());
}

inline std::size_t parse_tau(const std::vector<Line>& lines) {
  const std::size_t tau = parse_header(lines, 0, "tau");
  if (tau == 0 || tau > kMaxTau)
    throw ParseError(lines[0].number, "tau must lie in [1, 64]");
  return tau;
}

}  // namespace detail

inline std::string write_cover(const Cover& c) {
  std::string out = "tau " + std::to_string(c.tau()) + "\n";
  for (const auto& e : c.elements())
    out += "box " + e.box.to_string() + " levels=" + e.interval.to_string() +
           "\n";
  return out;
}

inline Cover parse_cover(std::string_view text) {
  using namespace detail;
  const auto lines = content_lines(text);
  const std::size_t tau = parse_tau(lines);
  Cover c{tau};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [no, line] = lines[i];
    const auto w = words(line);
    if (w.empty() || w[0] != "box")
      throw ParseError(no, "expected 'box ones=... zeros=... levels=...'");
    std::optional<std::string_view> ones, zeros, levels;
    for (std::size_t k = 1; k < w.size(); ++k) {
      const auto eq = w[k].find('=');
      if (eq == std::string_view::npos)
        throw ParseError(no, "expected key=value, got '" +
                                 std::string(w[k]) + "'");
      const auto key = w[k].substr(0, eq);
      const auto value = w[k].substr(eq + 1);
      auto& slot = key == "ones"     ? ones
                   : key == "zeros"  ? zeros
                   : key == "levels" ? levels
                                     : throw ParseError(
                                           no, "unknown key '" +
                                                   std::string(key) + "'");
      if (slot) throw ParseError(no, "duplicate key '" + std::string(key) + "'");
      slot = value;
    }
    if (!ones || !zeros || !levels)
      throw ParseError(no, "box needs ones=, zeros= and levels=");

    const auto one_idx = parse_index_list(*ones, no);
    const auto zero_idx = parse_index_list(*zeros, no);
    const auto dots = levels->find("..");
    if (dots == std::string_view::npos)
      throw ParseError(no, "levels must be <lo>..<hi|*>");
    const std::size_t lo = parse_number(levels->substr(0, dots), no, "level");
    const auto hi_text = levels->substr(dots + 2);
    std::optional<std::size_t> hi;
    if (hi_text != "*") hi = parse_number(hi_text, no, "level");
    if (hi && *hi < lo)
      throw ParseError(no, "empty level interval " + std::string(*levels));

    Mask one_mask = 0, zero_mask = 0;
    for (auto [idx, mask] : {std::pair{&one_idx, &one_mask},
                             std::pair{&zero_idx, &zero_mask}})
      for (std::size_t a : *idx) {
        if (a >= tau)
          throw ParseError(no, "coordinate " + std::to_string(a) +
                                   " out of range");
        if (*mask & starweb::detail::bit(a))
          throw ParseError(no, "duplicate coordinate " + std::to_string(a));
        *mask |= starweb::detail::bit(a);
      }
    if (one_mask & zero_mask)
      throw ParseError(no, "coordinate pinned to both 0 and 1");
    c.add(Box{tau, one_mask, zero_mask}, LevelInterval{lo, hi});
  }
  return c;
}

inline std::string write_witness(const LevelFamily& fam) {
  std::string out = "tau " + std::to_string(fam.tau()) + "\nhorizon " +
                    std::to_string(fam.horizon()) + "\n";
  auto list = [](const PointSet& s) {
    return s.empty() ? std::string{} : " " + detail::join_points(s);
  };
  for (std::size_t n = 0; n < fam.horizon(); ++n)
    out += "level " + std::to_string(n) + ":" + list(fam.prefix()[n]) + "\n";
  out += "tail:" + list(fam.tail()) + "\n";
  return out;
}

// Reads a witness file. Report lines (closed_discrete:, star_covers:,
// certificate:) are accepted and ignored.
inline LevelFamily parse_witness(std::string_view text) {
  using namespace detail;
  const auto lines = content_lines(text);
  const std::size_t tau = parse_tau(lines);
  const std::size_t horizon = parse_header(lines, 1, "horizon");
  std::vector<std::optional<PointSet>> prefix(horizon);
  std::optional<PointSet> tail;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto [no, line] = lines[i];
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(no, "expected '<key>: <points>'");
    const auto key = trim(line.substr(0, colon));
    const auto rest = line.substr(colon + 1);
    if (key == "tail") {
      if (tail) throw ParseError(no, "duplicate tail");
      tail = parse_points(rest, tau, no);
    } else if (key.starts_with("level ")) {
      const std::size_t n = parse_number(trim(key.substr(6)), no, "level");
      if (n >= horizon) throw ParseError(no, "level beyond horizon");
      if (prefix[n]) throw ParseError(no, "duplicate level");
      prefix[n] = parse_points(rest, tau, no);
    } else if (key == "closed_discrete" || key == "star_covers" ||
               key == "certificate") {
      continue;
    } else {
      throw ParseError(no, "unknown line '" + std::string(line) + "'");
    }
  }
  if (!tail) throw ParseError(lines.back().number, "missing tail line");
  std::vector<PointSet> slices;
  for (std::size_t n = 0; n < horizon; ++n) {
    if (!prefix[n])
      throw ParseError(lines.back().number,
                       "missing level " + std::to_string(n));
    slices.push_back(*prefix[n]);
  }
  return {tau, std::move(slices), *tail};
}

// Report block appended after the witness.
inline std::string write_report(const WitnessReport& r) {
  std::string out = write_witness(r.witness);
  out += std::string("closed_discrete: ") +
         (r.closed_discrete ? "true" : "false") + "\n";
  out += std::string("star_covers: ") + (r.star_covers ? "true" : "false") +
         "\n";
  if (r.accumulation)
    out += "certificate: " +
           XPoint{*r.accumulation, Level::top()}.to_string() + "\n";
  if (r.missed) out += "certificate: " + r.missed->to_string() + "\n";
  return out;
}

inline SetMapping parse_set_mapping(std::string_view text) {
  using namespace detail;
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "missing 'n <size>' line");
  const auto head = words(lines[0].text);
  std::size_t n = 0;
  if (head.size() == 2 && head[0] == "n")
    n = parse_number(head[1], lines[0].number, "size");
  else if (head.size() == 1)
    n = parse_number(head[0], lines[0].number, "size");
  else
    throw ParseError(lines[0].number, "expected 'n <size>'");

  std::vector<std::vector<std::size_t>> images(n);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [no, line] = lines[i];
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(no, "expected '<s>: <t1>,<t2>,...'");
    const std::size_t s = parse_number(trim(line.substr(0, colon)), no,
                                       "element");
    if (s >= n) throw ParseError(no, "element outside ground set");
    if (seen[s]) throw ParseError(no, "duplicate element");
    seen[s] = 1;
    images[s] = parse_index_list(line.substr(colon + 1), no);
    for (std::size_t t : images[s]) {
      if (t >= n) throw ParseError(no, "image element outside ground set");
      if (t == s) throw ParseError(no, "element in its own image");
    }
  }
  return SetMapping{std::move(images)};
}

inline std::string write_set_mapping(const SetMapping& f) {
  std::string out = "n " + std::to_string(f.size()) + "\n";
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f.image(s).empty()) continue;
    out += std::to_string(s) + ":";
    std::string sep = " ";
    for (std::size_t t : f.image(s)) {
      out += sep + std::to_string(t);
      sep = ",";
    }
    out += "\n";
  }
  return out;
}

inline std::string write_decomposition(const FreeDecomposition& d) {
  std::string out = "classes " + std::to_string(d.class_count()) + "\n";
  for (std::size_t i = 0; i < d.classes.size(); ++i) {
    out += "class " + std::to_string(i) + ":";
    std::string sep = " ";
    for (std::size_t s : d.classes[i]) {
      out += sep + std::to_string(s);
      sep = ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace starweb::format
