#include "hypershift/advice.hpp"

#include "hypershift/error.hpp"

namespace hypershift {

Polynomial::Polynomial(std::vector<std::uint64_t> coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  if (coefficients_.empty() || coefficients_.front() == 0) {
    throw Error(ErrorKind::MalformedInput, "advice length polynomial must satisfy p(0) >= 1");
  }
  if (coefficients_.size() < 2) {
    throw Error(ErrorKind::MalformedInput, "advice length polynomial must be increasing");
  }
}

std::uint64_t Polynomial::operator()(std::uint64_t n) const {
  std::uint64_t value = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * n + *it;
  return value;
}

AdviceOracle::AdviceOracle(Polynomial p, std::map<std::uint64_t, Word> table)
    : p_(std::move(p)), table_(std::move(table)) {
  for (const auto& [n, word] : table_) {
    if (word.size() != p_(n)) {
      throw Error(ErrorKind::Advice, "advice for n=" + std::to_string(n) + " has length " +
                                         std::to_string(word.size()) + ", expected p(n)=" +
                                         std::to_string(p_(n)));
    }
  }
}

AdviceOracle::AdviceOracle(Polynomial p, std::string generator_name, Generator generator)
    : p_(std::move(p)), generator_name_(std::move(generator_name)), generator_(std::move(generator)) {}

const Word& AdviceOracle::advice(std::uint64_t n) const {
  if (!generator_) {
    auto it = table_.find(n);
    if (it == table_.end()) throw Error(ErrorKind::Advice, "no advice string for n=" + std::to_string(n));
    return it->second;
  }
  std::lock_guard lock(mutex_);
  auto it = cache_.find(n);
  if (it == cache_.end()) {
    Word word = generator_(n, p_(n));
    if (word.size() != p_(n)) {
      throw Error(ErrorKind::Advice, "generator '" + generator_name_ + "' produced a word of wrong length for n=" +
                                         std::to_string(n));
    }
    it = cache_.emplace(n, std::move(word)).first;
  }
  return it->second;
}

Symbol AdviceOracle::tail_digit(std::uint64_t k) const {
  std::uint64_t n = 0;
  for (;;) {
    std::uint64_t len = p_(n);
    if (k < len) {
      const Word& w = advice(n);
      return w[len - 1 - k];
    }
    k -= len;
    ++n;
  }
}

namespace {

Word leading_blank(std::uint64_t length) { return Word(length, kBlank); }

}  // namespace

bool is_builtin_generator(const std::string& name) {
  return name == "zeros" || name == "binary" || name == "even_accept" || name == "odd_accept";
}

AdviceOracle::Generator builtin_generator(const std::string& name, Symbol one) {
  if (name == "zeros") {
    return [](std::uint64_t, std::uint64_t len) { return leading_blank(len); };
  }
  if (name == "binary") {
    return [one](std::uint64_t n, std::uint64_t len) {
      Word w = leading_blank(len);
      for (std::uint64_t i = 1; i < len && n > 0; ++i, n >>= 1) {
        if (n & 1) w[i] = one;
      }
      return w;
    };
  }
  if (name == "even_accept" || name == "odd_accept") {
    bool even = name == "even_accept";
    return [one, even](std::uint64_t n, std::uint64_t len) {
      if (len < 2) throw Error(ErrorKind::Advice, "accept-bit advice needs p(n) >= 2");
      Word w = leading_blank(len);
      if ((n % 2 == 0) == even) w[1] = one;
      return w;
    };
  }
  throw Error(ErrorKind::Parse, "unknown advice generator '" + name + "'");
}

}  // namespace hypershift
