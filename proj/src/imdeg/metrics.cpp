// Copyright 2026 the imdeg authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "imdeg/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "imdeg/error.hpp"

namespace imdeg {
namespace {

// Reference SSIM parameters for unit dynamic range.
constexpr int kWindowRadius = 5;  // 11x11 window
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw_error(ErrorCode::kShape, std::string(what) + ": images differ in shape (" +
                                       std::to_string(a.width) + "x" + std::to_string(a.height) +
                                       " vs " + std::to_string(b.width) + "x" +
                                       std::to_string(b.height) + ")");
  }
  if (a.width <= 0 || a.height <= 0) {
    throw_error(ErrorCode::kShape, std::string(what) + ": empty image");
  }
}

// Normalized 11-tap Gaussian window weights in double precision.
const std::vector<double>& window_taps() {
  static const std::vector<double> kTaps = [] {
    std::vector<double> taps(2 * kWindowRadius + 1);
    double sum = 0.0;
    for (int i = -kWindowRadius; i <= kWindowRadius; ++i) {
      double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * kWindowSigma * kWindowSigma));
      taps[i + kWindowRadius] = w;
      sum += w;
    }
    for (double& t : taps) t /= sum;
    return taps;
  }();
  return kTaps;
}

// Valid-mode separable Gaussian filtering of a double plane: the result has
// shape (w - 10) x (h - 10), evaluated only where the full window fits.
std::vector<double> filter_valid(const std::vector<double>& plane, int w, int h) {
  const std::vector<double>& taps = window_taps();
  const int r = kWindowRadius;
  const int out_w = w - 2 * r;
  const int out_h = h - 2 * r;
  // Horizontal pass over all rows, valid columns only.
  std::vector<double> tmp(static_cast<std::size_t>(out_w) * h);
  for (int y = 0; y < h; ++y) {
    const double* src = plane.data() + static_cast<std::size_t>(y) * w;
    double* dst = tmp.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k <= 2 * r; ++k) acc += taps[k] * src[x + k];
      dst[x] = acc;
    }
  }
  // Vertical pass over valid rows.
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y) {
    double* dst = out.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k <= 2 * r; ++k)
        acc += taps[k] * tmp[static_cast<std::size_t>(y + k) * out_w + x];
      dst[x] = acc;
    }
  }
  return out;
}

double ssim_channel(const Image& a, const Image& b, int channel) {
  const int w = a.width, h = a.height;
  std::vector<double> pa(static_cast<std::size_t>(w) * h);
  std::vector<double> pb(pa.size()), paa(pa.size()), pbb(pa.size()), pab(pa.size());
  for (int y = 0; y < h; ++y) {
    const float* ra = a.row(y);
    const float* rb = b.row(y);
    for (int x = 0; x < w; ++x) {
      double va = ra[x * 3 + channel];
      double vb = rb[x * 3 + channel];
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      pa[i] = va;
      pb[i] = vb;
      paa[i] = va * va;
      pbb[i] = vb * vb;
      pab[i] = va * vb;
    }
  }
  std::vector<double> mu_a = filter_valid(pa, w, h);
  std::vector<double> mu_b = filter_valid(pb, w, h);
  std::vector<double> m_aa = filter_valid(paa, w, h);
  std::vector<double> m_bb = filter_valid(pbb, w, h);
  std::vector<double> m_ab = filter_valid(pab, w, h);

  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    double ma = mu_a[i], mb = mu_b[i];
    double var_a = m_aa[i] - ma * ma;
    double var_b = m_bb[i] - mb * mb;
    double cov = m_ab[i] - ma * mb;
    // For identical inputs the numerator and denominator factors are the
    // same expressions on bitwise-equal values, so each window contributes
    // exactly 1.0 and the mean is exactly 1.0.
    double num = (2.0 * ma * mb + kC1) * (2.0 * cov + kC2);
    double den = (ma * ma + mb * mb + kC1) * (var_a + var_b + kC2);
    sum += num / den;
  }
  return sum / static_cast<double>(mu_a.size());
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

double mse(const Image& a, const Image& b) {
  require_same_shape(a, b, "mse");
  double acc = 0.0;
  const std::size_t n = a.sample_count();
  for (std::size_t i = 0; i < n; ++i) {
    double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(n);
}

double psnr(const Image& a, const Image& b) {
  double err = mse(a, b);
  // Below half an 8-bit quantization step of residual energy the reading is
  // pinned to 50 dB; 10*log10(1/1e-5) == 50, so the cap joins the curve
  // continuously.
  if (err <= 1e-5) return 50.0;
  return 10.0 * std::log10(1.0 / err);
}

double ssim(const Image& a, const Image& b) {
  require_same_shape(a, b, "ssim");
  if (a.width < 2 * kWindowRadius + 1 || a.height < 2 * kWindowRadius + 1) {
    throw_error(ErrorCode::kShape, "ssim requires images at least 11x11, got " +
                                       std::to_string(a.width) + "x" + std::to_string(a.height));
  }
  double sum = 0.0;
  for (int c = 0; c < Image::kChannels; ++c) sum += ssim_channel(a, b, c);
  return sum / Image::kChannels;
}

double one_minus_ssim(const Image& a, const Image& b) { return 1.0 - ssim(a, b); }

std::string MetricId::str() const {
  switch (kind) {
    case Kind::kPsnr: return "psnr";
    case Kind::kOneMinusSsim: return "1-ssim";
    case Kind::kExternal: return "external:" + external_name;
  }
  return "?";
}

MetricId parse_metric(const std::string& text) {
  std::string t = trim(text);
  if (t == "psnr" || t == "PSNR") return {MetricId::Kind::kPsnr, ""};
  if (t == "1-ssim" || t == "one_minus_ssim" || t == "one-minus-ssim" || t == "1_ssim") {
    return {MetricId::Kind::kOneMinusSsim, ""};
  }
  if (t.rfind("external:", 0) == 0) {
    std::string name = trim(t.substr(9));
    if (name.empty()) throw_error(ErrorCode::kArgument, "external metric needs a name, e.g. external:lpips");
    return {MetricId::Kind::kExternal, name};
  }
  throw_error(ErrorCode::kArgument,
              "unknown metric '" + text + "' (expected psnr, 1-ssim, or external:<name>)");
}

bool stronger_is_higher(const MetricId& metric) {
  return metric.kind != MetricId::Kind::kPsnr;
}

double strength(const MetricId& metric, const Image& reference, const Image& degraded) {
  switch (metric.kind) {
    case MetricId::Kind::kPsnr:
      return psnr(reference, degraded);
    case MetricId::Kind::kOneMinusSsim:
      return one_minus_ssim(reference, degraded);
    case MetricId::Kind::kExternal:
      throw_error(ErrorCode::kArgument,
                  "external metric '" + metric.external_name +
                      "' has no image-pair evaluator; merge a score file instead");
  }
  throw_error(ErrorCode::kInternal, "unhandled metric kind");
}

ExternalScores ExternalScores::from_text(const std::string& text) {
  ExternalScores out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    std::size_t comma = row.find(',');
    if (comma == std::string::npos) {
      throw_error(ErrorCode::kFormat,
                  "score file line " + std::to_string(line_no) + ": expected '<id>,<value>'");
    }
    std::string key = trim(row.substr(0, comma));
    std::string value = trim(row.substr(comma + 1));
    if (!have_header) {
      if (key != "metric" || value.empty()) {
        throw_error(ErrorCode::kFormat, "score file must start with a 'metric,<name>' header");
      }
      out.metric_name_ = value;
      have_header = true;
      continue;
    }
    try {
      std::size_t used = 0;
      double score = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      if (!out.scores_.emplace(key, score).second) {
        throw_error(ErrorCode::kFormat,
                    "score file line " + std::to_string(line_no) + ": duplicate id '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw_error(ErrorCode::kFormat, "score file line " + std::to_string(line_no) +
                                          ": bad numeric value '" + value + "'");
    }
  }
  if (!have_header) {
    throw_error(ErrorCode::kFormat, "score file is empty (missing 'metric,<name>' header)");
  }
  return out;
}

ExternalScores ExternalScores::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::kIo, "cannot open score file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

double ExternalScores::lookup(const std::string& image_id) const {
  auto it = scores_.find(image_id);
  if (it == scores_.end()) {
    throw_error(ErrorCode::kNotFound,
                "no '" + metric_name_ + "' score for image id '" + image_id + "'");
  }
  return it->second;
}

void ExternalScores::require_metric(const std::string& name) const {
  if (metric_name_ != name) {
    throw_error(ErrorCode::kMetricMismatch, "score file provides metric '" + metric_name_ +
                                                "' but '" + name + "' was requested");
  }
}

}  // namespace imdeg
