#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "torelli_euler/arith.hpp"
#include "torelli_euler/bernoulli.hpp"
#include "torelli_euler/errors.hpp"

using namespace torelli_euler;
namespace fs = std::filesystem;

namespace {

// Test-only oracle: the defining recurrence of z/(e^z - 1),
//   sum_{j=0}^{n} C(n+1, j) B_j = 0  for n >= 1.
std::vector<Rational> bernoulli_by_binomial_recurrence(std::size_t max) {
  std::vector<Rational> b(max + 1);
  b[0] = Rational(1);
  for (std::size_t n = 1; n <= max; ++n) {
    Rational sum;
    Integer binom = 1;  // C(n+1, 0)
    for (std::size_t j = 0; j < n; ++j) {
      sum += b[j] * binom;
      binom = binom * static_cast<unsigned long>(n + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b[n] = -sum / Integer(static_cast<unsigned long>(n + 1));
  }
  return b;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("te-bern-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

cache_error::kind load_error_kind(const fs::path& p) {
  try {
    (void)load_table(p);
  } catch (const cache_error& e) {
    return e.error_kind();
  }
  FAIL("load_table did not throw");
  return cache_error::kind::io;
}

void write(const fs::path& p, const std::string& body) { std::ofstream(p) << body; }

}  // namespace

TEST_CASE("first Bernoulli numbers") {
  const auto t = bernoulli_table(16);
  CHECK(bernoulli_table(1)[1] == Rational(Integer(-1), Integer(2)));
  CHECK(t[0] == Rational(1));
  CHECK(t[2] == Rational(Integer(1), Integer(6)));
  CHECK(t[3] == Rational(0));
  CHECK(t[4] == Rational(Integer(-1), Integer(30)));
  CHECK(t[12].numerator() == -691);
  CHECK(t[12].denominator() == 2730);
  CHECK(t[16].numerator() == -3617);
  CHECK(t[16].denominator() == 510);
  CHECK(t.algorithm() == BernoulliAlgorithm::seidel);
  CHECK_THROWS_AS((void)t[17], capacity_error);
}

TEST_CASE("both algorithms match the binomial recurrence oracle") {
  const auto oracle = bernoulli_by_binomial_recurrence(80);
  const auto seidel = bernoulli_seidel(80);
  const auto at = bernoulli_akiyama_tanigawa(80);
  for (std::size_t n = 0; n <= 80; ++n) {
    CHECK(seidel[n] == oracle[n]);
    CHECK(at[n] == oracle[n]);
  }
  CHECK(at.algorithm() == BernoulliAlgorithm::akiyama_tanigawa);
}

TEST_CASE("seidel and akiyama-tanigawa agree to index 600") {
  const auto a = bernoulli_seidel(600);
  const auto b = bernoulli_akiyama_tanigawa(600);
  CHECK(a.values() == b.values());
}

TEST_CASE("odd max index and empty tables") {
  CHECK(bernoulli_table(0).max_index() == 0);
  const auto t = bernoulli_table(7, BernoulliAlgorithm::akiyama_tanigawa);
  CHECK(t.max_index() == 7);
  CHECK(t[7] == Rational(0));
  CHECK_THROWS_AS(bernoulli_table(4, BernoulliAlgorithm::cache), usage_error);
}

TEST_CASE("von Staudt-Clausen denominators") {
  CHECK(von_staudt_clausen_denominator(1) == 6);
  CHECK(von_staudt_clausen_denominator(6) == 2730);
  CHECK(von_staudt_clausen_denominator(8) == 510);
  CHECK(von_staudt_clausen_primes(6) == std::vector<unsigned long>{2, 3, 5, 7, 13});
  CHECK_THROWS_AS(von_staudt_clausen_denominator(0), usage_error);

  const auto t = bernoulli_seidel(600);
  for (std::size_t k = 1; k <= 300; ++k) {
    CHECK(t.even(k).denominator() == von_staudt_clausen_denominator(k));
    Rational sum = t.even(k);
    for (unsigned long p : von_staudt_clausen_primes(k)) sum += Rational(Integer(1), Integer(p));
    CHECK(sum.is_integer());
    CHECK(t.even(k).sign() == (k % 2 == 1 ? 1 : -1));
  }
}

TEST_CASE("validation names the offending index") {
  auto values = bernoulli_seidel(20).values();
  values[12] = Rational::parse("-690/2730");
  const std::string why = BernoulliTable::validate(values);
  CHECK(why.find("B_12") != std::string::npos);
  CHECK(why.find("von Staudt") != std::string::npos);
  CHECK_THROWS_AS(BernoulliTable(values, BernoulliAlgorithm::seidel), domain_error);

  values = bernoulli_seidel(20).values();
  values[1] = Rational(Integer(1), Integer(2));
  CHECK(BernoulliTable::validate(values).find("B_1") != std::string::npos);

  values = bernoulli_seidel(20).values();
  values[8] = -values[8];
  CHECK(BernoulliTable::validate(values).find("sign") != std::string::npos);
}

TEST_CASE("cache round trip") {
  TempDir dir;
  const auto file = dir.path / "b.cache";
  for (auto algo : {BernoulliAlgorithm::seidel, BernoulliAlgorithm::akiyama_tanigawa}) {
    const auto t = bernoulli_table(100, algo);
    persist_table(t, file);
    CHECK(load_table(file) == t);
  }
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "BERN v1 convention=minus-half algorithm=akiyama-tanigawa max=100");
  std::string line;
  std::getline(in, line);
  CHECK(line == "0 1/1");
  std::getline(in, line);
  CHECK(line == "1 -1/2");
  std::getline(in, line);
  CHECK(line == "2 1/6");
  std::getline(in, line);
  CHECK(line == "4 -1/30");
  CHECK_FALSE(fs::exists(dir.path / "b.cache.tmp"));
}

TEST_CASE("cache load errors are distinct") {
  TempDir dir;
  const auto file = dir.path / "b.cache";
  CHECK(load_error_kind(dir.path / "absent") == cache_error::kind::missing_file);

  write(file, "");
  CHECK(load_error_kind(file) == cache_error::kind::malformed);

  write(file, "BERN v2 convention=minus-half algorithm=seidel max=2\n0 1/1\n1 -1/2\n2 1/6\n");
  CHECK(load_error_kind(file) == cache_error::kind::version_mismatch);

  write(file, "BERN v1 convention=plus-half algorithm=seidel max=2\n0 1/1\n1 1/2\n2 1/6\n");
  CHECK(load_error_kind(file) == cache_error::kind::version_mismatch);

  write(file, "BERN v1 convention=minus-half algorithm=seidel max=2\n0 1/1\n1 -1/2\n2 one/6\n");
  CHECK(load_error_kind(file) == cache_error::kind::malformed);

  write(file, "BERN v1 convention=minus-half algorithm=seidel max=4\n0 1/1\n1 -1/2\n2 1/6\n");
  CHECK(load_error_kind(file) == cache_error::kind::malformed);  // B_4 missing

  // Corrupted B_12: 690/2730 reduces to 23/91, breaking the denominator law.
  persist_table(bernoulli_table(20), file);
  std::stringstream body;
  body << std::ifstream(file).rdbuf();
  std::string text = body.str();
  const auto at = text.find("12 -691/2730");
  REQUIRE(at != std::string::npos);
  text.replace(at, 12, "12 690/2730");
  write(file, text);
  CHECK(load_error_kind(file) == cache_error::kind::invariant_violation);
}

TEST_CASE("load_or_build persists and reuses") {
  TempDir dir;
  const auto file = dir.path / "c.cache";
  const auto built = load_or_build(file, 30);
  CHECK(fs::exists(file));
  CHECK(load_or_build(file, 20) == built);      // covered: reused as is
  CHECK(load_or_build(file, 40).max_index() == 40);  // grown and rewritten
  CHECK(load_table(file).max_index() == 40);
}
