#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hypershift/alphabet.hpp"

namespace hypershift {

/// Polynomial with non-negative integer coefficients, lowest degree first.
class Polynomial {
 public:
  explicit Polynomial(std::vector<std::uint64_t> coefficients);

  std::uint64_t operator()(std::uint64_t n) const;
  const std::vector<std::uint64_t>& coefficients() const { return coefficients_; }

 private:
  std::vector<std::uint64_t> coefficients_;
};

/// The advice strings a_n of a machine with polynomial advice.
///
/// Either a finite table or a computable generator rule. Queries are memoized
/// behind a mutex, so a single oracle can be shared between threads. The
/// concatenation a_inf = ...a_2 a_1 a_0 is exposed digit by digit through
/// `tail_digit`, digit 0 being the last symbol of a_0.
class AdviceOracle {
 public:
  using Generator = std::function<Word(std::uint64_t n, std::uint64_t length)>;

  AdviceOracle(Polynomial p, std::map<std::uint64_t, Word> table);
  AdviceOracle(Polynomial p, std::string generator_name, Generator generator);

  AdviceOracle(const AdviceOracle&) = delete;
  AdviceOracle& operator=(const AdviceOracle&) = delete;

  const Polynomial& p() const { return p_; }
  std::uint64_t length(std::uint64_t n) const { return p_(n); }

  /// a_n; throws ErrorKind::Advice when the table has no entry for n or the
  /// stored word has the wrong length.
  const Word& advice(std::uint64_t n) const;

  Symbol tail_digit(std::uint64_t k) const;

  bool is_table() const { return !generator_; }
  const std::map<std::uint64_t, Word>& table() const { return table_; }
  const std::string& generator_name() const { return generator_name_; }

 private:
  Polynomial p_;
  std::map<std::uint64_t, Word> table_;
  std::string generator_name_;
  Generator generator_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, Word> cache_;
};

/// Built-in generator rules usable from machine specs. `first_nonblank` is the
/// symbol used for "1" digits.
///   zeros            a_n = 0^{p(n)}
///   binary           a_n = 0 followed by the binary digits of n, least
///                    significant first, padded with blanks
///   even_accept      a_n = 0 b 0...0 with b = 1 iff n is even
///   odd_accept       same with n odd
AdviceOracle::Generator builtin_generator(const std::string& name, Symbol first_nonblank);
bool is_builtin_generator(const std::string& name);

}  // namespace hypershift
