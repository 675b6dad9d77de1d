#include "torelli_euler/bernoulli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>

#include "torelli_euler/arith.hpp"
#include "torelli_euler/errors.hpp"

namespace torelli_euler {

std::string_view to_string(BernoulliAlgorithm a) {
  switch (a) {
    case BernoulliAlgorithm::seidel:
      return "seidel";
    case BernoulliAlgorithm::akiyama_tanigawa:
      return "akiyama-tanigawa";
    case BernoulliAlgorithm::cache:
      return "cache";
  }
  return "unknown";
}

BernoulliAlgorithm parse_algorithm(std::string_view tag) {
  if (tag == "seidel") return BernoulliAlgorithm::seidel;
  if (tag == "akiyama-tanigawa") return BernoulliAlgorithm::akiyama_tanigawa;
  if (tag == "cache") return BernoulliAlgorithm::cache;
  throw usage_error("unknown Bernoulli algorithm '" + std::string(tag) + "'");
}

BernoulliTable::BernoulliTable(std::vector<Rational> values, BernoulliAlgorithm algorithm)
    : values_(std::move(values)), algorithm_(algorithm) {
  if (auto diagnosis = validate(values_); !diagnosis.empty()) throw domain_error(diagnosis);
}

const Rational& BernoulliTable::operator[](std::size_t n) const {
  if (n > max_index()) {
    throw capacity_error("Bernoulli table holds B_0..B_" + std::to_string(max_index()) +
                         ", B_" + std::to_string(n) + " requested");
  }
  return values_[n];
}

std::string BernoulliTable::validate(const std::vector<Rational>& values) {
  if (values.empty()) return "empty Bernoulli table";
  if (values[0] != Rational(1)) return "B_0 = " + values[0].str() + ", expected 1";
  if (values.size() > 1 && values[1] != Rational(Integer(-1), Integer(2))) {
    return "B_1 = " + values[1].str() + ", expected -1/2";
  }
  for (std::size_t n = 3; n < values.size(); n += 2) {
    if (!values[n].is_zero()) return "B_" + std::to_string(n) + " = " + values[n].str() + ", expected 0";
  }
  for (std::size_t n = 2; n < values.size(); n += 2) {
    const std::size_t k = n / 2;
    const int expected_sign = (k % 2 == 1) ? 1 : -1;
    if (values[n].sign() != expected_sign) {
      return "B_" + std::to_string(n) + " = " + values[n].str() + " has the wrong sign";
    }
    const Integer den = von_staudt_clausen_denominator(k);
    if (values[n].denominator() != den) {
      return "B_" + std::to_string(n) + " = " + values[n].str() + " violates von Staudt-Clausen: denominator " +
             values[n].denominator().get_str() + ", expected " + den.get_str();
    }
  }
  return {};
}

BernoulliTable bernoulli_seidel(std::size_t max_index) {
  std::vector<Rational> values(max_index + 1);
  values[0] = Rational(1);
  if (max_index >= 1) values[1] = Rational(Integer(-1), Integer(2));
  const std::size_t n = max_index / 2;
  if (n == 0) return BernoulliTable(std::move(values), BernoulliAlgorithm::seidel);

  // tangent[j] ends up as the tangent number T_j, j = 1..n.
  std::vector<Integer> tangent(n + 1);
  tangent[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) tangent[k] = tangent[k - 1] * static_cast<unsigned long>(k - 1);
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      tangent[j] = tangent[j - 1] * static_cast<unsigned long>(j - k) +
                   tangent[j] * static_cast<unsigned long>(j - k + 2);
    }
  }

  for (std::size_t k = 1; k <= n; ++k) {
    Integer four_k = 1;
    four_k <<= static_cast<mp_bitcnt_t>(2 * k);
    Integer num = tangent[k] * static_cast<unsigned long>(2 * k);
    if (k % 2 == 0) num = -num;
    values[2 * k] = Rational(num, four_k * (four_k - 1));
  }
  return BernoulliTable(std::move(values), BernoulliAlgorithm::seidel);
}

BernoulliTable bernoulli_akiyama_tanigawa(std::size_t max_index) {
  std::vector<Rational> values(max_index + 1);
  std::vector<Rational> row(max_index + 1);
  for (std::size_t m = 0; m <= max_index; ++m) {
    row[m] = Rational(Integer(1), Integer(static_cast<unsigned long>(m + 1)));
    for (std::size_t j = m; j >= 1; --j) {
      row[j - 1] = (row[j - 1] - row[j]) * Integer(static_cast<unsigned long>(j));
    }
    values[m] = row[0];
  }
  // The triangle produces the B_1 = +1/2 convention.
  if (max_index >= 1) values[1] = -values[1];
  return BernoulliTable(std::move(values), BernoulliAlgorithm::akiyama_tanigawa);
}

BernoulliTable bernoulli_table(std::size_t max_index, BernoulliAlgorithm algorithm) {
  try {
    switch (algorithm) {
      case BernoulliAlgorithm::akiyama_tanigawa:
        return bernoulli_akiyama_tanigawa(max_index);
      case BernoulliAlgorithm::seidel:
        return bernoulli_seidel(max_index);
      case BernoulliAlgorithm::cache:
        break;
    }
  } catch (const std::bad_alloc&) {
    throw capacity_error("out of memory building B_0..B_" + std::to_string(max_index));
  }
  throw usage_error("'cache' is not a construction algorithm");
}

std::vector<unsigned long> von_staudt_clausen_primes(std::size_t k) {
  if (k == 0) throw usage_error("von Staudt-Clausen needs k >= 1");
  const unsigned long two_k = 2 * static_cast<unsigned long>(k);
  std::vector<unsigned long> small;
  std::vector<unsigned long> large;
  for (unsigned long d = 1; d * d <= two_k; ++d) {
    if (two_k % d != 0) continue;
    if (is_probable_prime(Integer(d + 1))) small.push_back(d + 1);
    const unsigned long e = two_k / d;
    if (e != d && is_probable_prime(Integer(e + 1))) large.insert(large.begin(), e + 1);
  }
  small.insert(small.end(), large.begin(), large.end());
  return small;
}

Integer von_staudt_clausen_denominator(std::size_t k) {
  Integer product = 1;
  for (unsigned long p : von_staudt_clausen_primes(k)) product *= p;
  return product;
}

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw cache_error(cache_error::kind::io, "cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw cache_error(cache_error::kind::io, "cannot lock " + path.string());
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

[[noreturn]] void malformed(const std::filesystem::path& where, std::size_t line, const std::string& why) {
  throw cache_error(cache_error::kind::malformed,
                    where.string() + ":" + std::to_string(line) + ": " + why);
}

std::size_t parse_index(std::string_view text) {
  if (text.empty() || text.size() > 9) throw usage_error("bad index");
  std::size_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw usage_error("bad index");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

}  // namespace

void persist_table(const BernoulliTable& table, const std::filesystem::path& location) {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream body;
  body << "BERN v1 convention=" << BernoulliTable::convention << " algorithm=" << to_string(table.algorithm())
       << " max=" << table.max_index() << '\n';
  const auto& values = table.values();
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (n >= 3 && n % 2 == 1) continue;
    body << n << ' ' << values[n].numerator().get_str() << '/' << values[n].denominator().get_str() << '\n';
  }

  std::lock_guard guard(cache_mutex());
  auto lock_path = location;
  lock_path += ".lock";
  FileLock lock(lock_path);

  auto tmp = location;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw cache_error(cache_error::kind::io, "cannot write " + tmp.string());
    out << body.str();
    out.flush();
    if (!out) throw cache_error(cache_error::kind::io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, location, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw cache_error(cache_error::kind::io, "cannot rename into " + location.string() + ": " + ec.message());
  }
}

BernoulliTable load_table(const std::filesystem::path& location) {
  std::ifstream in(location, std::ios::binary);
  if (!in) throw cache_error(cache_error::kind::missing_file, "no Bernoulli cache at " + location.string());

  std::string line;
  if (!std::getline(in, line)) malformed(location, 1, "empty file");
  std::istringstream header(line);
  std::string magic, version, convention, algorithm, max;
  if (!(header >> magic >> version >> convention >> algorithm >> max) || magic != "BERN") {
    malformed(location, 1, "bad header '" + line + "'");
  }
  if (version != "v1") {
    throw cache_error(cache_error::kind::version_mismatch,
                      location.string() + ": cache version " + version + ", expected v1");
  }
  if (convention != "convention=" + std::string(BernoulliTable::convention)) {
    throw cache_error(cache_error::kind::version_mismatch,
                      location.string() + ": unsupported " + convention);
  }
  if (algorithm.rfind("algorithm=", 0) != 0 || max.rfind("max=", 0) != 0) {
    malformed(location, 1, "bad header '" + line + "'");
  }

  BernoulliAlgorithm tag{};
  std::size_t max_index = 0;
  try {
    tag = parse_algorithm(std::string_view(algorithm).substr(10));
    max_index = parse_index(std::string_view(max).substr(4));
  } catch (const usage_error&) {
    malformed(location, 1, "bad header '" + line + "'");
  }

  std::vector<Rational> values(max_index + 1);
  std::vector<bool> seen(max_index + 1, false);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos || line.find(' ', space + 1) != std::string::npos) {
      malformed(location, line_no, "expected '<n> <num>/<den>'");
    }
    std::size_t n = 0;
    try {
      n = parse_index(std::string_view(line).substr(0, space));
      const auto value_text = std::string_view(line).substr(space + 1);
      if (value_text.find('/') == std::string_view::npos) throw usage_error("missing '/'");
      if (n > max_index) malformed(location, line_no, "index beyond max=" + std::to_string(max_index));
      if (seen[n]) malformed(location, line_no, "duplicate index " + std::to_string(n));
      values[n] = Rational::parse(value_text);
    } catch (const usage_error&) {
      malformed(location, line_no, "expected '<n> <num>/<den>', got '" + line + "'");
    } catch (const domain_error&) {
      malformed(location, line_no, "zero denominator");
    }
    seen[n] = true;
  }
  for (std::size_t n = 0; n <= max_index; ++n) {
    if (!seen[n] && (n < 3 || n % 2 == 0)) malformed(location, line_no, "missing B_" + std::to_string(n));
  }
  if (auto diagnosis = BernoulliTable::validate(values); !diagnosis.empty()) {
    throw cache_error(cache_error::kind::invariant_violation, location.string() + ": " + diagnosis);
  }
  return BernoulliTable(std::move(values), tag);
}

BernoulliTable load_or_build(const std::filesystem::path& location, std::size_t max_index) {
  if (std::filesystem::exists(location)) {
    BernoulliTable cached = load_table(location);
    if (cached.covers(max_index)) return cached;
  }
  BernoulliTable built = bernoulli_seidel(max_index);
  persist_table(built, location);
  return built;
}

}  // namespace torelli_euler
