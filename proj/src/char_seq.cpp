#include "polcum/char_seq.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace polcum {

std::complex<double> CharSeq::at(int q) const {
  const int a = q < 0 ? -q : q;
  if (a >= static_cast<int>(values.size()))
    throw std::out_of_range("characteristic sequence index " + std::to_string(q) +
                            " exceeds q_max = " + std::to_string(q_max()));
  return q < 0 ? std::conj(values[a]) : values[a];
}

void CharSeq::validate() const {
  if (values.empty()) throw std::invalid_argument("empty characteristic sequence");
  if (length <= 0) throw std::invalid_argument("characteristic sequence needs a positive length");
  if (std::abs(values[0] - std::complex<double>(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("Z_0 must equal 1");
  for (std::size_t q = 0; q < values.size(); ++q)
    if (std::abs(values[q]) > 1.0 + 1e-10)
      throw std::invalid_argument("|Z_" + std::to_string(q) + "| exceeds 1");
}

CharSeq CharSeq::flat(double length, int q_max) {
  CharSeq cs;
  cs.length = length;
  cs.values.assign(static_cast<std::size_t>(q_max) + 1, {0.0, 0.0});
  cs.values[0] = {1.0, 0.0};
  cs.source = CharSeqSource::Analytic;
  return cs;
}

CharSeq CharSeq::analytic(double length, std::vector<std::complex<double>> values) {
  CharSeq cs;
  cs.length = length;
  cs.values = std::move(values);
  cs.source = CharSeqSource::Analytic;
  cs.validate();
  return cs;
}

}  // namespace polcum
