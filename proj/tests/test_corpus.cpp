#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "fanomut/corpus.hpp"

using namespace fanomut;
namespace fs = std::filesystem;

namespace {

auto with_code(const std::string& c) {
  return Catch::Matchers::Predicate<domain_error>(
      [c](const domain_error& e) { return e.code() == c; });
}

const std::string kDir = default_corpus_dir();

// scratch corpus with a single group directory "g"
fs::path fresh_dir() {
  fs::path d = fs::temp_directory_path() / "fanomut-corpus-test";
  fs::remove_all(d);
  fs::create_directories(d / "g");
  return d;
}

void put(const fs::path& dir, const std::string& rel, const std::string& text) {
  std::ofstream out(dir / rel);
  out << text;
}

CorpusEntry put_and_get(const std::string& body) {
  fs::path d = fresh_dir();
  put(d, "g/e.txt", body);
  return corpus_get("g/e", d.string());
}

}  // namespace

TEST_CASE("corpus keys resolve fully, by unique basename, and fail cleanly") {
  CorpusEntry full = corpus_get("reflexive-1/P3", kDir);
  REQUIRE(full.key == "reflexive-1/P3");
  REQUIRE(full.is_polynomial());
  REQUIRE(full.dim == 3);
  REQUIRE(full.polynomial().term_count() == 4);
  REQUIRE(full.expect_periods.size() == 9);
  REQUIRE(full.expect_rigid == true);

  CorpusEntry base = corpus_get("fig1-left", kDir);
  REQUIRE(base.key == "figures/fig1-left");
  REQUIRE_FALSE(base.is_polynomial());
  REQUIRE(base.polytope().vertices().size() == 4);
  REQUIRE(base.expect_sc == "n=4 basket=[1/3(1,1) x2]");
  REQUIRE_THROWS_MATCHES(base.polynomial(), domain_error,
                         with_code("wrong-payload"));

  REQUIRE_THROWS_MATCHES(corpus_get("P3", kDir), domain_error,
                         with_code("ambiguous-key"));
  REQUIRE_THROWS_MATCHES(corpus_get("no-such-entry", kDir), domain_error,
                         with_code("not-found"));
  REQUIRE_THROWS_MATCHES(corpus_get("reflexive-1/Q3", kDir), domain_error,
                         with_code("not-found"));
  REQUIRE_THROWS_MATCHES(corpus_get("../corpus/reflexive-1/P3", kDir),
                         domain_error, with_code("bad-key"));
  REQUIRE_THROWS_MATCHES(corpus_get("", kDir), domain_error,
                         with_code("bad-key"));
  REQUIRE_THROWS_MATCHES(corpus_get("P3", "/no/such/directory"), domain_error,
                         with_code("no-corpus-dir"));
}

TEST_CASE("listing is sorted and prefix filtered") {
  auto all = corpus_list("", kDir);
  REQUIRE(all.size() == 39);
  REQUIRE(std::is_sorted(all.begin(), all.end()));

  REQUIRE(corpus_list("reflexive-", kDir).size() == 23);
  REQUIRE(corpus_list("examples/", kDir).size() == 11);
  REQUIRE(corpus_list("fig", kDir) ==
          std::vector<std::string>{"figures/fig1-left", "figures/fig1-right"});
  // bare-name prefixes match too
  REQUIRE(corpus_list("example-1.3", kDir) ==
          std::vector<std::string>{"examples/example-1.3-P",
                                   "examples/example-1.3-Q"});
  REQUIRE(corpus_list("zzz", kDir).empty());
}

TEST_CASE("every entry carries a normalised Fano payload") {
  std::size_t polys = 0, shapes = 0;
  for (const std::string& key : corpus_list("", kDir)) {
    CorpusEntry e = corpus_get(key, kDir);
    REQUIRE(e.key == key);
    if (e.is_polynomial()) {
      ++polys;
      const LaurentPolynomial& f = e.polynomial();
      REQUIRE(f.dim() == e.dim);
      REQUIRE(f.is_normalised());
      REQUIRE(f.has_zero_constant_term());
    } else {
      ++shapes;
    }
    LatticePolytope p = e.polytope();
    REQUIRE(p.full_dim());
    REQUIRE(p.is_fano());
  }
  REQUIRE(polys == 32);
  REQUIRE(shapes == 7);
}

TEST_CASE("periods agree within each mirror table") {
  std::map<std::string, std::vector<PeriodSequence>> tables;
  for (const std::string& key : corpus_list("reflexive-", kDir)) {
    CorpusEntry e = corpus_get(key, kDir);
    tables[key.substr(key.find('/') + 1)].push_back(
        classical_period(e.polynomial(), 8));
  }
  REQUIRE(tables.size() == 10);
  std::size_t paired = 0;
  for (const auto& [table, seqs] : tables) {
    if (seqs.size() > 1) ++paired;
    for (const PeriodSequence& s : seqs) {
      INFO(table);
      REQUIRE(s.coeffs == seqs.front().coeffs);
    }
  }
  REQUIRE(paired == 7);  // P3, Q3, B2, M2-32, M3-27, V6, V8

  // two mirrors with inequivalent polytopes, one period sequence
  auto pp = classical_period(corpus_get("example-1.3-P", kDir).polynomial(), 8);
  auto pq = classical_period(corpus_get("example-1.3-Q", kDir).polynomial(), 8);
  REQUIRE(pp.coeffs == pq.coeffs);

  // the two hexagon splittings reproduce two reflexive table sequences
  auto f2 = classical_period(
      corpus_get("example-minkowski-hexagon/f2", kDir).polynomial(), 8);
  auto f3 = classical_period(
      corpus_get("example-minkowski-hexagon/f3", kDir).polynomial(), 8);
  REQUIRE(f2.coeffs ==
          classical_period(corpus_get("reflexive-13/M2-32", kDir).polynomial(), 8)
              .coeffs);
  REQUIRE(f3.coeffs ==
          classical_period(corpus_get("reflexive-18/M3-27", kDir).polynomial(), 8)
              .coeffs);
}

TEST_CASE("verify passes on every curated entry") {
  for (const std::string& key : corpus_list("", kDir)) {
    VerifyReport rep = verify_entry(key, kDir);
    REQUIRE(rep.key == key);
    INFO(key);
    for (const VerifyCheck& c : rep.checks) {
      INFO(c.name + ": " + c.detail);
      REQUIRE(c.pass);
    }
    REQUIRE(rep.ok());
  }

  // expectation-free entries yield an empty (vacuously passing) report
  VerifyReport none = verify_entry("example-minkowski-hexagon/P", kDir);
  REQUIRE(none.checks.empty());
  REQUIRE(none.ok());

  VerifyReport sc = verify_entry("square-polygon", kDir);
  REQUIRE(sc.checks.size() == 1);
  REQUIRE(sc.checks[0].name == "singularity-content");
}

TEST_CASE("expectation mismatches produce failing reports that name the check") {
  fs::path d = fresh_dir();
  put(d, "g/wrong-period.txt",
      "type: polynomial\ndim: 2\npoly: x+y+1/(x*y)\n"
      "expect-periods: 1 0 0 7\n");
  put(d, "g/wrong-sc.txt",
      "type: polytope\ndim: 2\npoints: 1,0;0,1;-1,-1\n"
      "expect-sc: n=9 basket=[]\n");
  put(d, "g/wrong-rigid.txt",
      "type: polynomial\ndim: 2\npoly: x+y+1/(x*y)\n"
      "expect-rigid: false\n");

  VerifyReport p = verify_entry("wrong-period", d.string());
  REQUIRE_FALSE(p.ok());
  REQUIRE(p.checks.size() == 1);
  REQUIRE(p.checks[0].name == "periods");
  REQUIRE_THAT(p.checks[0].detail, Catch::Matchers::ContainsSubstring("t^3"));

  VerifyReport s = verify_entry("wrong-sc", d.string());
  REQUIRE_FALSE(s.ok());
  REQUIRE(s.checks[0].name == "singularity-content");
  REQUIRE_THAT(s.checks[0].detail,
               Catch::Matchers::ContainsSubstring("n=3 basket=[]"));

  VerifyReport r = verify_entry("wrong-rigid", d.string());
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.checks[0].name == "rigidity");
}

TEST_CASE("malformed entry files are rejected with positions") {
  REQUIRE_THROWS_MATCHES(put_and_get("dim: 2\npoly: x+y+1/(x*y)\n"),
                         domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(put_and_get("type: polynomial\npoly: x+y\n"),
                         domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(
      put_and_get("type: polynomial\ndim: 2\npoly: x+y+1/(x*y)\nvolume: 3\n"),
      domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(put_and_get("type: widget\ndim: 2\npoly: x\n"),
                         domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(put_and_get("type: polynomial\ndim: seven\npoly: x\n"),
                         domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(put_and_get("type: polynomial\ndim: 2\npoly: x+*y\n"),
                         domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(put_and_get("type: polynomial\ndim: 2\npoly:\n"),
                         domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(
      put_and_get("type: polytope\ndim: 2\npoints: 1,0;0,1,5;-1,-1\n"),
      domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(
      put_and_get("type: polytope\ndim: 2\npoints: 1,0;0,1;-1,-1\n"
                  "expect-rigid: true\n"),
      domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(
      put_and_get("type: polynomial\ndim: 3\npoly: x+y+z+1/(x*y*z)\n"
                  "expect-sc: n=4 basket=[]\n"),
      domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(
      put_and_get("type: polynomial\ndim: 2\npoly: x+y+1/(x*y)\n"
                  "expect-rigid: maybe\n"),
      domain_error, with_code("corpus-parse"));
  REQUIRE_THROWS_MATCHES(put_and_get("just a lonely line\n"), domain_error,
                         with_code("corpus-parse"));
  // dim understates the variables actually used
  REQUIRE_THROWS_MATCHES(put_and_get("type: polynomial\ndim: 2\npoly: x+y+z\n"),
                         domain_error, with_code("corpus-parse"));
  // degenerate vertex sets surface the geometric error untouched
  REQUIRE_THROWS_MATCHES(
      put_and_get("type: polytope\ndim: 2\npoints: 1,0;2,0;-1,0\n"),
      domain_error, with_code("degenerate-input"));
}

TEST_CASE("trailing blanks and carriage returns are tolerated") {
  fs::path d = fresh_dir();
  put(d, "g/crlf.txt",
      "# padded   \r\ntype: polynomial  \r\ndim: 2\t\r\n"
      "poly: x+y+1/(x*y) \r\nexpect-periods: 1 0 0 6\t \r\n");
  CorpusEntry e = corpus_get("crlf", d.string());
  REQUIRE(e.polynomial() == parse_polynomial("x+y+1/(x*y)", 2));
  REQUIRE(e.expect_periods == std::vector<Int>{1, 0, 0, 6});
  REQUIRE(verify_entry("crlf", d.string()).ok());
}

TEST_CASE("environment override redirects the default directory") {
  fs::path d = fresh_dir();
  put(d, "g/only-here.txt", "type: polynomial\ndim: 2\npoly: x+y+1/(x*y)\n");

  REQUIRE(setenv("FANOMUT_CORPUS", d.string().c_str(), 1) == 0);
  REQUIRE(default_corpus_dir() == d.string());
  REQUIRE(corpus_get("only-here").key == "g/only-here");
  REQUIRE(corpus_list().size() == 1);
  REQUIRE(unsetenv("FANOMUT_CORPUS") == 0);

  REQUIRE(default_corpus_dir() == kDir);
  REQUIRE_THROWS_MATCHES(corpus_get("only-here"), domain_error,
                         with_code("not-found"));
}

TEST_CASE("singularity content renders grouped basket strings") {
  REQUIRE(format_singularity_content({Int(3), {}}) == "n=3 basket=[]");
  REQUIRE(format_singularity_content({Int(9), {{Int(3), Int(1)}}}) ==
          "n=9 basket=[1/3(1,1)]");
  REQUIRE(format_singularity_content(
              {Int(4), {{Int(3), Int(1)}, {Int(3), Int(1)}}}) ==
          "n=4 basket=[1/3(1,1) x2]");
  REQUIRE(format_singularity_content({Int(7),
                                      {{Int(3), Int(1)},
                                       {Int(3), Int(1)},
                                       {Int(3), Int(1)},
                                       {Int(5), Int(2)}}}) ==
          "n=7 basket=[1/3(1,1) x3 1/5(1,2)]");
}
