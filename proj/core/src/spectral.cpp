#include "optoconj/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numbers>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

// FFTW planning is not thread safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double parse_number(std::string_view s, const char* field) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InvalidParameter(field, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

double UniformGrid::operator[](std::size_t i) const {
  if (n == 1) return start;
  if (i + 1 == n) return stop;
  return start + step() * static_cast<double>(i);
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (*this)[i];
  return p;
}

UniformGrid UniformGrid::parse(std::string_view spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw InvalidParameter("grid", "expected start:stop:n");
  }
  UniformGrid g;
  g.start = parse_number(spec.substr(0, c1), "grid.start");
  g.stop = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), "grid.stop");
  const auto ns = spec.substr(c2 + 1);
  std::size_t n = 0;
  auto res = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (res.ec != std::errc{} || res.ptr != ns.data() + ns.size() || n == 0) {
    throw InvalidParameter("grid.n", "must be a positive integer");
  }
  g.n = n;
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) {
    throw InvalidParameter("grid", "bounds must be finite");
  }
  if (n > 1 && !(g.stop > g.start)) throw InvalidParameter("grid.stop", "must exceed start");
  return g;
}

SpectralFunction::SpectralFunction(std::vector<double> omega,
                                   std::vector<std::complex<double>> values, std::string units,
                                   std::string provenance)
    : omega_(std::move(omega)),
      values_(std::move(values)),
      units_(std::move(units)),
      provenance_(std::move(provenance)) {
  if (omega_.size() != values_.size()) {
    throw InvalidParameter("SpectralFunction.values", "size must match grid");
  }
  for (std::size_t i = 1; i < omega_.size(); ++i) {
    if (!(omega_[i] > omega_[i - 1])) {
      throw InvalidParameter("SpectralFunction.omega", "grid must be strictly increasing");
    }
  }
}

SpectralFunction::SpectralFunction(std::vector<double> omega, const std::vector<double>& values,
                                   std::string units, std::string provenance)
    : SpectralFunction(std::move(omega),
                       std::vector<std::complex<double>>(values.begin(), values.end()),
                       std::move(units), std::move(provenance)) {}

std::vector<double> SpectralFunction::real_values() const {
  std::vector<double> r(values_.size());
  std::transform(values_.begin(), values_.end(), r.begin(), [](auto v) { return v.real(); });
  return r;
}

void SpectralFunction::set_stderr(std::vector<double> s) {
  if (s.size() != omega_.size()) {
    throw InvalidParameter("SpectralFunction.stderr", "size must match grid");
  }
  stderr_ = std::move(s);
}

bool SpectralFunction::contains(double w) const noexcept {
  return !omega_.empty() && w >= omega_.front() && w <= omega_.back();
}

std::complex<double> SpectralFunction::at(double w) const {
  if (omega_.empty()) throw GridMiss(w, 0.0, 0.0);
  if (!contains(w)) throw GridMiss(w, omega_.front(), omega_.back());
  if (omega_.size() == 1) return values_.front();
  auto it = std::upper_bound(omega_.begin(), omega_.end(), w);
  std::size_t hi = static_cast<std::size_t>(it - omega_.begin());
  if (hi == omega_.size()) return values_.back();
  const std::size_t lo = hi - 1;
  const double t = (w - omega_[lo]) / (omega_[hi] - omega_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

double SpectralFunction::max_imag_fraction() const {
  double worst = 0.0;
  for (auto v : values_) {
    const double a = std::abs(v);
    if (a > 0) worst = std::max(worst, std::abs(v.imag()) / a);
  }
  return worst;
}

WelchAccumulator::WelchAccumulator(std::size_t segment_length, double dt)
    : nseg_(segment_length), dt_(dt) {
  if (segment_length < 8) throw InvalidParameter("segment_length", "must be >= 8");
  if (!(dt > 0)) throw InvalidParameter("dt", "must be > 0");
  window_.resize(nseg_);
  for (std::size_t i = 0; i < nseg_; ++i) {
    window_[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(nseg_));
    wsum2_ += window_[i] * window_[i];
  }
  const std::size_t nout = nseg_ / 2 + 1;
  sum_.assign(nout, 0.0);
  sum_sq_.assign(nout, 0.0);
  in_ = fftw_alloc_real(nseg_);
  out_ = fftw_alloc_complex(nout);
  std::lock_guard lock(fftw_planner_mutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(nseg_), in_,
                               static_cast<fftw_complex*>(out_), FFTW_ESTIMATE);
}

WelchAccumulator::~WelchAccumulator() {
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

void WelchAccumulator::add_series(const std::vector<double>& x) {
  if (x.size() < nseg_) {
    throw WindowTooShort("series of " + std::to_string(x.size()) +
                         " samples is shorter than one Welch segment (" + std::to_string(nseg_) +
                         ")");
  }
  const std::size_t hop = nseg_ / 2;
  const std::size_t nout = nseg_ / 2 + 1;
  auto* out = static_cast<fftw_complex*>(out_);
  const double norm = dt_ / wsum2_;
  for (std::size_t s = 0; s + nseg_ <= x.size(); s += hop) {
    for (std::size_t i = 0; i < nseg_; ++i) in_[i] = window_[i] * x[s + i];
    fftw_execute(static_cast<fftw_plan>(plan_));
    for (std::size_t k = 0; k < nout; ++k) {
      const double p = norm * (out[k][0] * out[k][0] + out[k][1] * out[k][1]);
      sum_[k] += p;
      sum_sq_[k] += p * p;
    }
    ++count_;
  }
}

void WelchAccumulator::merge(const WelchAccumulator& other) {
  if (other.nseg_ != nseg_ || other.dt_ != dt_) {
    throw InvalidParameter("WelchAccumulator", "geometry mismatch in merge");
  }
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    sum_[k] += other.sum_[k];
    sum_sq_[k] += other.sum_sq_[k];
  }
  count_ += other.count_;
}

WelchEstimate WelchAccumulator::result() const {
  WelchEstimate est;
  const std::size_t nout = sum_.size();
  est.omega.resize(nout);
  est.psd.assign(nout, 0.0);
  est.stderr_psd.assign(nout, 0.0);
  est.segments = count_;
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(nseg_) * dt_);
  for (std::size_t k = 0; k < nout; ++k) est.omega[k] = dw * static_cast<double>(k);
  if (count_ == 0) return est;
  const double n = static_cast<double>(count_);
  for (std::size_t k = 0; k < nout; ++k) {
    const double mean = sum_[k] / n;
    est.psd[k] = mean;
    if (count_ > 1) {
      const double var = std::max(0.0, (sum_sq_[k] - n * mean * mean) / (n - 1.0));
      est.stderr_psd[k] = std::sqrt(var / n);
    }
  }
  return est;
}

WelchEstimate welch_psd(const std::vector<double>& x, double dt, std::size_t segment_length) {
  WelchAccumulator acc(segment_length, dt);
  acc.add_series(x);
  return acc.result();
}

}  // namespace optoconj
