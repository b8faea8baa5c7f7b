#include "nv/matrix.hpp"

namespace nv {

std::size_t bareiss_rank(Matrix<mpz_class> m) {
  std::size_t rank = 0;
  mpz_class previous = 1;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, rank);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      for (std::size_t c = col + 1; c < m.cols(); ++c) {
        mpz_class v = m(rank, col) * m(r, c) - m(r, col) * m(rank, c);
        mpz_divexact(m(r, c).get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
      }
      m(r, col) = 0;
    }
    previous = m(rank, col);
    ++rank;
  }
  return rank;
}

std::size_t exact_rank(const Matrix<mpq_class>& m, const Rationals&) {
  Matrix<mpz_class> ints(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_class scaled = m(r, c).get_num() * (lcm / m(r, c).get_den());
      ints(r, c) = scaled;
    }
  }
  return bareiss_rank(std::move(ints));
}

}  // namespace nv
