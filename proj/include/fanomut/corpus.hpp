#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fanomut/laurent.hpp>
#include <fanomut/parse.hpp>
#include <fanomut/polygon2d.hpp>
#include <fanomut/polytope.hpp>
#include <fanomut/rigidity.hpp>

// Curated data sets live on disk as <dir>/<group>/<name>.txt, one entry per
// file. An entry is a list of "key: value" lines plus '#' comments; payloads
// are either a polynomial or a vertex list, optionally bundled with expected
// invariants that verify_entry() recomputes from scratch.

namespace fanomut {

inline std::string default_corpus_dir() {
  if (const char* env = std::getenv("FANOMUT_CORPUS")) return env;
#ifdef FANOMUT_DEFAULT_CORPUS_DIR
  return FANOMUT_DEFAULT_CORPUS_DIR;
#else
  return "corpus";
#endif
}

struct CorpusEntry {
  std::string key;  // "<group>/<name>"
  std::size_t dim = 0;
  std::optional<LaurentPolynomial> poly;
  std::optional<LatticePolytope> shape;
  std::vector<Int> expect_periods;  // leading coefficients, empty when absent
  std::optional<std::string> expect_sc;
  std::optional<bool> expect_rigid;

  bool is_polynomial() const { return poly.has_value(); }

  const LaurentPolynomial& polynomial() const {
    if (!poly)
      throw domain_error("wrong-payload", key + " does not hold a polynomial");
    return *poly;
  }

  LatticePolytope polytope() const {
    if (shape) return *shape;
    if (poly) return poly->newton_polytope();
    throw domain_error("wrong-payload", key + " holds no polytope");
  }
};

// "n=<t-cones> basket=[1/r(1,a) ...]", repeats collapsed to " xk"
inline std::string format_singularity_content(const SingularityContent& sc) {
  std::string out = "n=" + sc.t_cone_count.str() + " basket=[";
  std::size_t i = 0;
  while (i < sc.basket.size()) {
    std::size_t j = i;
    while (j < sc.basket.size() && sc.basket[j] == sc.basket[i]) ++j;
    if (i) out += ' ';
    out += "1/" + sc.basket[i].first.str() + "(1," + sc.basket[i].second.str() + ")";
    if (j - i > 1) out += " x" + std::to_string(j - i);
    i = j;
  }
  return out + "]";
}

namespace detail {

inline void corpus_fail(const std::filesystem::path& path, int lineno,
                        const std::string& why) {
  throw domain_error("corpus-parse",
                     path.string() + ":" + std::to_string(lineno) + ": " + why);
}

inline std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(Int(tok));
  return out;
}

inline std::vector<IntVec> parse_point_list(const std::string& text,
                                            std::size_t dim) {
  std::vector<IntVec> pts;
  std::istringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    IntVec p;
    std::istringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t'))
        cell.pop_back();
      p.push_back(Int(cell));
    }
    if (p.size() != dim)
      throw usage_error("point '" + row + "' has " + std::to_string(p.size()) +
                        " coordinates, expected " + std::to_string(dim));
    pts.push_back(std::move(p));
  }
  return pts;
}

inline CorpusEntry load_corpus_file(const std::string& key,
                                    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("not-found", "cannot open " + path.string());

  CorpusEntry e;
  e.key = key;
  std::optional<std::string> type, poly_text, points_text;
  int lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      corpus_fail(path, lineno, "expected 'key: value'");
    std::string k = line.substr(0, colon);
    std::string v = line.substr(colon + 1);
    v.erase(0, v.find_first_not_of(" \t"));
    if (v.empty()) corpus_fail(path, lineno, "empty value for '" + k + "'");
    try {
      if (k == "type") {
        if (v != "polynomial" && v != "polytope")
          corpus_fail(path, lineno, "unknown type '" + v + "'");
        type = v;
      } else if (k == "dim") {
        int d = std::stoi(v);
        if (d < 1 || d > 3) corpus_fail(path, lineno, "dim out of range");
        e.dim = static_cast<std::size_t>(d);
      } else if (k == "poly") {
        poly_text = v;
      } else if (k == "points") {
        points_text = v;
      } else if (k == "expect-periods") {
        e.expect_periods = parse_int_list(v);
        if (e.expect_periods.empty())
          corpus_fail(path, lineno, "expect-periods needs numbers");
      } else if (k == "expect-sc") {
        e.expect_sc = v;
      } else if (k == "expect-rigid") {
        if (v != "true" && v != "false")
          corpus_fail(path, lineno, "expect-rigid must be true or false");
        e.expect_rigid = (v == "true");
      } else {
        corpus_fail(path, lineno, "unknown key '" + k + "'");
      }
    } catch (const usage_error& err) {
      corpus_fail(path, lineno, err.what());
    } catch (const std::invalid_argument&) {
      corpus_fail(path, lineno, "malformed number in '" + v + "'");
    } catch (const std::out_of_range&) {
      corpus_fail(path, lineno, "number out of range in '" + v + "'");
    } catch (const std::runtime_error& err) {
      if (dynamic_cast<const domain_error*>(&err)) throw;
      corpus_fail(path, lineno, err.what());
    }
  }

  if (!type) corpus_fail(path, 0, "missing 'type'");
  if (e.dim == 0) corpus_fail(path, 0, "missing 'dim'");
  try {
    if (*type == "polynomial") {
      if (!poly_text || points_text)
        corpus_fail(path, 0, "polynomial entries need exactly a 'poly' line");
      LaurentPolynomial f = parse_polynomial(*poly_text, e.dim);
      if (f.dim() != e.dim)
        corpus_fail(path, 0, "payload uses more variables than 'dim'");
      for (const auto& [expo, c] : f.terms())
        if (!c.is_constant())
          corpus_fail(path, 0, "payload must have constant coefficients");
      e.poly = std::move(f);
    } else {
      if (!points_text || poly_text)
        corpus_fail(path, 0, "polytope entries need exactly a 'points' line");
      e.shape = LatticePolytope::hull(parse_point_list(*points_text, e.dim),
                                      e.dim);
      if (!e.expect_periods.empty() || e.expect_rigid)
        corpus_fail(path, 0,
                    "period and rigidity expectations need a polynomial");
    }
    if (e.expect_sc && e.dim != 2)
      corpus_fail(path, 0, "expect-sc applies to two dimensional entries");
  } catch (const usage_error& err) {
    corpus_fail(path, 0, err.what());
  } catch (const std::runtime_error& err) {
    if (dynamic_cast<const domain_error*>(&err)) throw;
    corpus_fail(path, 0, err.what());
  }
  return e;
}

}  // namespace detail

// sorted (key, file) pairs for every entry under dir
inline std::vector<std::pair<std::string, std::filesystem::path>> corpus_index(
    const std::string& dir = default_corpus_dir()) {
  namespace fs = std::filesystem;
  fs::path root(dir);
  if (!fs::is_directory(root))
    throw domain_error("no-corpus-dir", dir + " is not a directory");
  std::vector<std::pair<std::string, fs::path>> out;
  for (const auto& group : fs::directory_iterator(root)) {
    if (!group.is_directory()) continue;
    for (const auto& file : fs::directory_iterator(group.path())) {
      if (!file.is_regular_file() || file.path().extension() != ".txt")
        continue;
      out.emplace_back(
          group.path().filename().string() + "/" + file.path().stem().string(),
          file.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// full "<group>/<name>" keys resolve directly; a bare name resolves when it
// is unique across groups
inline CorpusEntry corpus_get(const std::string& key,
                              const std::string& dir = default_corpus_dir()) {
  if (key.empty() || key.find("..") != std::string::npos || key.front() == '/')
    throw domain_error("bad-key", "'" + key + "' is not a corpus key");
  const auto index = corpus_index(dir);
  if (key.find('/') != std::string::npos) {
    for (const auto& [k, path] : index)
      if (k == key) return detail::load_corpus_file(k, path);
    throw domain_error("not-found", "no corpus entry '" + key + "'");
  }
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < index.size(); ++i)
    if (index[i].first.substr(index[i].first.find('/') + 1) == key)
      hits.push_back(i);
  if (hits.empty())
    throw domain_error("not-found", "no corpus entry '" + key + "'");
  if (hits.size() > 1) {
    std::string all;
    for (std::size_t i : hits) all += " " + index[i].first;
    throw domain_error("ambiguous-key", "'" + key + "' matches" + all);
  }
  return detail::load_corpus_file(index[hits[0]].first, index[hits[0]].second);
}

// keys whose full form or bare name starts with prefix
inline std::vector<std::string> corpus_list(
    const std::string& prefix = "",
    const std::string& dir = default_corpus_dir()) {
  std::vector<std::string> keys;
  for (const auto& [k, path] : corpus_index(dir)) {
    const std::string base = k.substr(k.find('/') + 1);
    if (k.rfind(prefix, 0) == 0 || base.rfind(prefix, 0) == 0)
      keys.push_back(k);
  }
  return keys;
}

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string key;
  std::vector<VerifyCheck> checks;  // empty when the entry expects nothing

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
  }
};

// recomputes every expectation the entry carries
inline VerifyReport verify_entry(const CorpusEntry& e) {
  VerifyReport rep;
  rep.key = e.key;

  if (!e.expect_periods.empty()) {
    VerifyCheck c{"periods", true, ""};
    const auto order = static_cast<unsigned>(e.expect_periods.size() - 1);
    PeriodSequence seq = classical_period(e.polynomial(), order);
    for (std::size_t i = 0; i < e.expect_periods.size(); ++i)
      if (seq.coeffs[i] != Rat(e.expect_periods[i])) {
        c.pass = false;
        c.detail = "t^" + std::to_string(i) + ": expected " +
                   e.expect_periods[i].str() + ", computed " +
                   to_string(seq.coeffs[i]);
        break;
      }
    rep.checks.push_back(std::move(c));
  }

  if (e.expect_sc) {
    VerifyCheck c{"singularity-content", true, ""};
    const std::string got = format_singularity_content(
        singularity_content(e.polytope()));
    if (got != *e.expect_sc) {
      c.pass = false;
      c.detail = "expected '" + *e.expect_sc + "', computed '" + got + "'";
    }
    rep.checks.push_back(std::move(c));
  }

  if (e.expect_rigid) {
    VerifyCheck c{"rigidity", true, ""};
    RigidityReport r = certify_rigid(e.polynomial());
    if (r.verdict == RigidityVerdict::inconclusive) {
      c.pass = false;
      c.detail = "rigidity stayed inconclusive";
    } else if ((r.verdict == RigidityVerdict::rigid) != *e.expect_rigid) {
      c.pass = false;
      c.detail = std::string("expected ") +
                 (*e.expect_rigid ? "rigid" : "not rigid") + ", computed the opposite";
    }
    rep.checks.push_back(std::move(c));
  }

  return rep;
}

inline VerifyReport verify_entry(const std::string& key,
                                 const std::string& dir = default_corpus_dir()) {
  return verify_entry(corpus_get(key, dir));
}

}  // namespace fanomut
