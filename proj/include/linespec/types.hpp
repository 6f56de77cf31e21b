#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace linespec {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Frequency on the unit torus, reduced to [0, 1) on construction.
class TorusFreq {
public:
  TorusFreq() = default;
  explicit TorusFreq(double f) {
    double r = f - std::floor(f);
    value_ = (r >= 1.0) ? 0.0 : r;  // guard against floor rounding at 1.0
  }
  double value() const { return value_; }
  friend bool operator==(TorusFreq a, TorusFreq b) { return a.value_ == b.value_; }
  friend auto operator<=>(TorusFreq a, TorusFreq b) { return a.value_ <=> b.value_; }

private:
  double value_ = 0.0;
};

/// Wrap-around distance on the torus, in [0, 0.5].
double torus_distance(TorusFreq a, TorusFreq b);

/// One spectral line: a frequency and its complex amplitude.
struct SpectralAtom {
  TorusFreq freq;
  cplx amp;
};

/// A discrete line spectrum. May be empty (the zero signal); no two entries
/// share a frequency.
struct AtomicDecomposition {
  std::vector<SpectralAtom> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  std::vector<TorusFreq> frequencies() const {
    std::vector<TorusFreq> fs;
    fs.reserve(entries.size());
    for (const auto& e : entries) fs.push_back(e.freq);
    return fs;
  }
};

/// n = 2m+1 equispaced complex samples. Logical index j in {-m..m} is stored
/// at j+m; all interfaces speak logical indices.
class Samples {
public:
  Samples() = default;
  explicit Samples(CVec data) : data_(std::move(data)) {}
  static Samples zeros(int n) { return Samples(CVec::Zero(n)); }

  int n() const { return static_cast<int>(data_.size()); }
  int half_width() const { return (n() - 1) / 2; }  // m
  const CVec& data() const { return data_; }
  CVec& data() { return data_; }

  cplx at(int logical_j) const { return data_(logical_j + half_width()); }
  cplx& at(int logical_j) { return data_(logical_j + half_width()); }

  double norm() const { return data_.norm(); }
  double squared_norm() const { return data_.squaredNorm(); }

private:
  CVec data_;
};

/// Per-component complex Gaussian noise: each sample gets
/// sigma*(g1 + i*g2)/sqrt(2), so E|w_j|^2 = sigma^2.
struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace linespec
