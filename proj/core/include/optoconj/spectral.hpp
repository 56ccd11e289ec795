#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace optoconj {

// Uniform frequency (or parameter) grid, inclusive of both ends.
struct UniformGrid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t n = 0;

  double step() const { return n > 1 ? (stop - start) / static_cast<double>(n - 1) : 0.0; }
  double operator[](std::size_t i) const;
  std::vector<double> points() const;

  // "start:stop:n", n >= 1. Throws InvalidParameter.
  static UniformGrid parse(std::string_view spec);
};

// Sampled function of angular frequency. Lookups between nodes interpolate
// linearly; lookups outside [front, back] throw GridMiss.
class SpectralFunction {
 public:
  SpectralFunction() = default;
  SpectralFunction(std::vector<double> omega, std::vector<std::complex<double>> values,
                   std::string units = {}, std::string provenance = {});
  SpectralFunction(std::vector<double> omega, const std::vector<double>& values,
                   std::string units = {}, std::string provenance = {});

  const std::vector<double>& omega() const noexcept { return omega_; }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }
  std::vector<double> real_values() const;

  const std::optional<std::vector<double>>& stderr_values() const noexcept { return stderr_; }
  void set_stderr(std::vector<double> s);

  const std::string& units() const noexcept { return units_; }
  const std::string& provenance() const noexcept { return provenance_; }

  std::size_t size() const noexcept { return omega_.size(); }
  bool contains(double w) const noexcept;
  std::complex<double> at(double w) const;
  double real_at(double w) const { return at(w).real(); }

  // Largest |Im v| / |v| over the samples (0 for an all-zero function).
  double max_imag_fraction() const;

 private:
  std::vector<double> omega_;
  std::vector<std::complex<double>> values_;
  std::optional<std::vector<double>> stderr_;
  std::string units_;
  std::string provenance_;
};

// Two-sided Welch estimate with a Hann window and 50% overlap. The density is
// normalized so that sum(P) * domega / (2 pi) equals the mean square of the
// input, i.e. P(w) estimates int dt e^{i w t} <x(t) x(0)>.
struct WelchEstimate {
  std::vector<double> omega;  // 0 .. pi/dt
  std::vector<double> psd;
  std::vector<double> stderr_psd;  // standard error of the mean over segments
  std::size_t segments = 0;
};

class WelchAccumulator {
 public:
  WelchAccumulator(std::size_t segment_length, double dt);
  ~WelchAccumulator();
  WelchAccumulator(const WelchAccumulator&) = delete;
  WelchAccumulator& operator=(const WelchAccumulator&) = delete;

  // Adds every 50%-overlapping segment of `x` to the running average.
  void add_series(const std::vector<double>& x);
  // Merge partial sums from another accumulator with the same geometry.
  void merge(const WelchAccumulator& other);

  std::size_t segment_length() const noexcept { return nseg_; }
  std::size_t segments() const noexcept { return count_; }
  const std::vector<double>& window() const noexcept { return window_; }
  WelchEstimate result() const;

 private:
  std::size_t nseg_;
  double dt_;
  double wsum2_ = 0.0;
  std::vector<double> window_;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
  std::size_t count_ = 0;
  void* plan_ = nullptr;
  double* in_ = nullptr;
  void* out_ = nullptr;
};

WelchEstimate welch_psd(const std::vector<double>& x, double dt, std::size_t segment_length);

}  // namespace optoconj
