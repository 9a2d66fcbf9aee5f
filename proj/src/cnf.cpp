#include "rado/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace rado {

void CnfFormula::add_clause(std::span<const int> lits) {
  if (lits.empty()) throw std::invalid_argument("empty clause");
  for (int l : lits) {
    if (l == 0 || l > var_count_ || -l > var_count_)
      throw std::out_of_range("literal outside variable range");
  }
  starts_.push_back(lits_.size());
  lits_.insert(lits_.end(), lits.begin(), lits.end());
}

void CnfFormula::append(const CnfFormula& other) {
  var_count_ = std::max(var_count_, other.var_count_);
  for (std::size_t i = 0; i < other.clause_count(); ++i) add_clause(other.clause(i));
}

std::size_t dedup_literals(std::span<int> lits) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < out; ++j)
      if (lits[j] == lits[i]) {
        seen = true;
        break;
      }
    if (!seen) lits[out++] = lits[i];
  }
  return out;
}

void write_dimacs(const CnfFormula& f, std::ostream& out,
                  std::span<const std::string> comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << f.var_count() << ' ' << f.clause_count() << '\n';
  std::string line;
  char buf[16];
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    line.clear();
    for (int l : f.clause(i)) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l);
      line.append(buf, end);
      line.push_back(' ');
    }
    line += "0\n";
    out << line;
  }
}

std::string to_dimacs(const CnfFormula& f, std::span<const std::string> comments) {
  std::ostringstream out;
  write_dimacs(f, out, comments);
  return out.str();
}

CnfFormula read_dimacs(std::istream& in) {
  std::string line;
  long long declared_vars = -1, declared_clauses = -1;
  CnfFormula f;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos) continue;
    if (line[p] == 'c' || line[p] == '%') continue;
    if (line[p] == 'p') {
      std::istringstream h(line.substr(p + 1));
      std::string fmt;
      if (!(h >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" ||
          declared_vars < 0 || declared_clauses < 0)
        throw std::runtime_error("malformed DIMACS header: " + line);
      f.set_var_count(static_cast<int>(declared_vars));
      continue;
    }
    if (declared_vars < 0) throw std::runtime_error("clause before DIMACS header");
    const char* s = line.data() + p;
    const char* e = line.data() + line.size();
    while (s < e) {
      while (s < e && (*s == ' ' || *s == '\t' || *s == '\r')) ++s;
      if (s >= e) break;
      int v = 0;
      auto [next, ec] = std::from_chars(s, e, v);
      if (ec != std::errc()) throw std::runtime_error("bad literal in DIMACS: " + line);
      s = next;
      if (v == 0) {
        if (current.empty()) throw std::runtime_error("empty clause in DIMACS input");
        f.add_clause(current);
        current.clear();
      } else {
        current.push_back(v);
      }
    }
  }
  if (!current.empty()) throw std::runtime_error("unterminated clause in DIMACS input");
  if (declared_vars < 0) throw std::runtime_error("missing DIMACS header");
  if (static_cast<long long>(f.clause_count()) != declared_clauses)
    throw std::runtime_error("DIMACS clause count does not match header");
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

namespace {

class Sha256 {
public:
  Sha256() : ctx_(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr); }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t len) { EVP_DigestUpdate(ctx_, data, len); }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
      out.push_back(digits[md[i] >> 4]);
      out.push_back(digits[md[i] & 15]);
    }
    return out;
  }

private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string canonical_fingerprint(const CnfFormula& f) {
  std::vector<std::vector<int>> clauses;
  clauses.reserve(f.clause_count());
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    auto c = f.clause(i);
    std::vector<int> sorted(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end());
    clauses.push_back(std::move(sorted));
  }
  std::sort(clauses.begin(), clauses.end());
  Sha256 h;
  std::int32_t header[2] = {f.var_count(), static_cast<std::int32_t>(clauses.size())};
  h.update(header, sizeof header);
  for (const auto& c : clauses) {
    std::int32_t len = static_cast<std::int32_t>(c.size());
    h.update(&len, sizeof len);
    h.update(c.data(), c.size() * sizeof(int));
  }
  return h.hex();
}

}  // namespace rado
