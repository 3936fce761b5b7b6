#include "bvista/niqe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>

#include "bvista/distribution_fit.hpp"
#include "bvista/error.hpp"
#include "bvista/parallel.hpp"

namespace bvista {
namespace {

constexpr double kPinvTolerance = 1e-10;

// Neighbour offsets (dy, dx) for the H, V, D1 and D2 pairwise products.
constexpr int kShifts[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};

// 1 where every sample in the (2r+1)^2 window (replicate borders) is equal.
Plane flat_windows(const Plane& in, int r) {
  const int w = in.width, h = in.height;
  Plane lo(w, h), hi(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double a = in(x, y), b = a;
      for (int k = -r; k <= r; ++k) {
        const double v = in(std::clamp(x + k, 0, w - 1), y);
        a = std::min(a, v);
        b = std::max(b, v);
      }
      lo(x, y) = a;
      hi(x, y) = b;
    }
  }
  Plane flat(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double a = lo(x, y), b = hi(x, y);
      for (int k = -r; k <= r; ++k) {
        const int yy = std::clamp(y + k, 0, h - 1);
        a = std::min(a, lo(x, yy));
        b = std::max(b, hi(x, yy));
      }
      flat(x, y) = a == b ? 1.0 : 0.0;
    }
  }
  return flat;
}

MscnResult mscn_of_plane(const Plane& in, const NiqeConfig& config) {
  if (in.width < config.window_size || in.height < config.window_size) {
    throw ArgumentError("frame " + std::to_string(in.width) + "x" +
                        std::to_string(in.height) + " is smaller than the " +
                        std::to_string(config.window_size) + "-pixel MSCN window");
  }
  Plane squared(in.width, in.height);
  for (std::size_t i = 0; i < in.size(); ++i) squared.values[i] = in.values[i] * in.values[i];
  const auto window = gaussian_kernel(config.window_size, config.window_sigma);
  const Plane mu = filter_separable(in, window);
  const Plane mu_sq = filter_separable(squared, window);
  // Flat windows are exactly zero in both fields.
  const Plane flat = flat_windows(in, config.window_size / 2);

  MscnResult out{Plane(in.width, in.height), Plane(in.width, in.height)};
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (flat.values[i] != 0.0) continue;
    const double m = mu.values[i];
    const double sd = std::sqrt(std::abs(mu_sq.values[i] - m * m));
    out.sigma.values[i] = sd;
    out.mscn.values[i] = (in.values[i] - m) / (sd + config.stabilizer);
  }
  return out;
}

double block_mean(const Plane& p, int x0, int y0, int w, int h) {
  double sum = 0.0;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) sum += p(x, y);
  }
  return sum / (static_cast<double>(w) * h);
}

Plane crop(const Plane& p, int w, int h) {
  if (w == p.width && h == p.height) return p;
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    std::copy_n(&p.values[static_cast<std::size_t>(y) * p.width], w,
                &out.values[static_cast<std::size_t>(y) * w]);
  }
  return out;
}

void check_statistics_finite(const Eigen::VectorXd& v, const Eigen::MatrixXd& m) {
  if (!v.allFinite() || !m.allFinite()) {
    throw ArgumentError("NIQE statistics contain non-finite values");
  }
}

}  // namespace

MscnResult compute_mscn_fields(const FrameImage& luma, const NiqeConfig& config) {
  return mscn_of_plane(plane_from_luma(luma), config);
}

Plane compute_mscn(const FrameImage& luma, const NiqeConfig& config) {
  return compute_mscn_fields(luma, config).mscn;
}

std::vector<double> mscn_block_features(const Plane& mscn, int x0, int y0, int w, int h) {
  std::vector<double> block(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      block[static_cast<std::size_t>(y) * w + x] = mscn(x0 + x, y0 + y);
    }
  }

  std::vector<double> feat;
  feat.reserve(18);
  const AggdFit base = fit_aggd(block);
  feat.push_back(base.alpha);
  feat.push_back((base.beta_l + base.beta_r) / 2.0);

  std::vector<double> pairs(block.size());
  for (const auto& shift : kShifts) {
    const int dy = shift[0];
    const int dx = shift[1];
    for (int y = 0; y < h; ++y) {
      const int sy = ((y - dy) % h + h) % h;
      for (int x = 0; x < w; ++x) {
        const int sx = ((x - dx) % w + w) % w;
        pairs[static_cast<std::size_t>(y) * w + x] =
            block[static_cast<std::size_t>(y) * w + x] * block[static_cast<std::size_t>(sy) * w + sx];
      }
    }
    const AggdFit fit = fit_aggd(pairs);
    feat.insert(feat.end(), {fit.alpha, fit.eta, fit.beta_l, fit.beta_r});
  }
  return feat;
}

NiqePatchFeatures niqe_patch_features(const FrameImage& luma, const NiqeConfig& config) {
  if (config.scales < 1 || config.patch_size < 2 ||
      config.patch_size % (1 << (config.scales - 1)) != 0) {
    throw ArgumentError("patch size must be divisible by 2^(scales-1)");
  }
  Plane plane = plane_from_luma(luma);
  const int ps = config.patch_size;
  const int granularity = 1 << (config.scales - 1);

  NiqePatchFeatures out;
  out.single_patch_mode = std::min(plane.width, plane.height) < 2 * ps;
  int cols = 1, rows = 1;
  if (out.single_patch_mode) {
    plane = crop(plane, plane.width / granularity * granularity,
                 plane.height / granularity * granularity);
  } else {
    cols = plane.width / ps;
    rows = plane.height / ps;
    plane = crop(plane, cols * ps, rows * ps);
  }
  const auto patch_count = static_cast<std::size_t>(rows) * cols;
  out.total_patches = patch_count;

  const std::size_t nf = config.feature_count();
  Eigen::MatrixXd all(static_cast<Eigen::Index>(patch_count), static_cast<Eigen::Index>(nf));
  std::vector<bool> usable(patch_count, true);
  std::vector<double> sharpness(patch_count, 0.0);

  for (int s = 0; s < config.scales; ++s) {
    const MscnResult fields = mscn_of_plane(plane, config);
    const int bw = plane.width / cols;
    const int bh = plane.height / rows;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto p = static_cast<std::size_t>(r) * cols + c;
        if (s == 0) sharpness[p] = block_mean(fields.sigma, c * bw, r * bh, bw, bh);
        if (!usable[p]) continue;
        try {
          const auto f = mscn_block_features(fields.mscn, c * bw, r * bh, bw, bh);
          for (std::size_t k = 0; k < f.size(); ++k) {
            all(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(18 * s + k)) = f[k];
          }
        } catch (const Error&) {
          usable[p] = false;
        }
      }
    }
    if (s + 1 < config.scales) {
      plane = resample_cubic(plane, plane.width / 2, plane.height / 2);
    }
  }

  std::vector<Eigen::Index> keep;
  for (std::size_t p = 0; p < patch_count; ++p) {
    if (usable[p]) {
      keep.push_back(static_cast<Eigen::Index>(p));
      out.sharpness.push_back(sharpness[p]);
    }
  }
  if (keep.empty()) {
    throw DegenerateError("frame has no patch with usable natural-scene statistics");
  }
  out.features = all(keep, Eigen::all);
  return out;
}

std::vector<std::size_t> select_patches(const NiqePatchFeatures& patches,
                                        PatchSelection selection,
                                        double sharpness_fraction) {
  std::vector<std::size_t> out;
  const std::size_t n = patches.sharpness.size();
  if (selection == PatchSelection::All) {
    out.resize(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  const double peak = n == 0 ? 0.0 : *std::max_element(patches.sharpness.begin(),
                                                       patches.sharpness.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (patches.sharpness[i] >= sharpness_fraction * peak) out.push_back(i);
  }
  return out;
}

NiqeFrameStatistics niqe_frame_statistics(const FrameImage& luma, const NiqeConfig& config) {
  const NiqePatchFeatures patches = niqe_patch_features(luma, config);
  const auto chosen =
      select_patches(patches, config.scoring_selection, config.sharpness_fraction);
  if (chosen.empty()) throw DegenerateError("no selectable patches");

  std::vector<Eigen::Index> idx(chosen.begin(), chosen.end());
  const Eigen::MatrixXd x = patches.features(idx, Eigen::all);
  NiqeFrameStatistics stats;
  stats.patch_count = chosen.size();
  stats.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centred = x.rowwise() - stats.mean.transpose();
  stats.covariance = x.rows() > 1
                         ? Eigen::MatrixXd(centred.transpose() * centred /
                                           static_cast<double>(x.rows() - 1))
                         : Eigen::MatrixXd::Zero(x.cols(), x.cols());
  return stats;
}

Eigen::VectorXd niqe_features(const FrameImage& luma, const NiqeConfig& config) {
  return niqe_frame_statistics(luma, config).mean;
}

void NiqeModel::validate() const {
  const auto d = mean.size();
  if (d == 0 || covariance.rows() != d || covariance.cols() != d) {
    throw FormatError("NIQE model mean and covariance dimensions disagree");
  }
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw FormatError("NIQE model contains non-finite values");
  }
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw FormatError("NIQE model covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8) {
    throw FormatError("NIQE model covariance is not positive semi-definite");
  }
}

NiqeModel read_niqe_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open NIQE model " + path.string());
  std::string magic;
  long long d = 0;
  if (!(in >> magic >> d) || magic != "NIQE-MVG" || d < 1) {
    throw FormatError(path.string() + ": expected `NIQE-MVG <dimension>` header");
  }
  NiqeModel model{Eigen::VectorXd(d), Eigen::MatrixXd(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(in >> model.mean(i))) throw FormatError(path.string() + ": truncated mean");
  }
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      if (!(in >> model.covariance(r, c))) {
        throw FormatError(path.string() + ": truncated covariance");
      }
    }
  }
  std::string extra;
  if (in >> extra) throw FormatError(path.string() + ": trailing data after covariance");
  model.validate();
  return model;
}

void write_niqe_model(const std::filesystem::path& path, const NiqeModel& model) {
  model.validate();
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << std::setprecision(17) << "NIQE-MVG " << model.mean.size() << '\n';
  for (Eigen::Index i = 0; i < model.mean.size(); ++i) {
    out << (i ? " " : "") << model.mean(i);
  }
  out << '\n';
  for (Eigen::Index r = 0; r < model.covariance.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.covariance.cols(); ++c) {
      out << (c ? " " : "") << model.covariance(r, c);
    }
    out << '\n';
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

double niqe_score(const NiqeFrameStatistics& frame, const NiqeModel& model) {
  if (frame.mean.size() != model.mean.size() ||
      frame.covariance.rows() != model.covariance.rows() ||
      frame.covariance.cols() != model.covariance.cols()) {
    throw ArgumentError("frame statistics and NIQE model dimensions differ");
  }
  check_statistics_finite(frame.mean, frame.covariance);
  const Eigen::VectorXd diff = model.mean - frame.mean;
  const Eigen::MatrixXd pooled = (model.covariance + frame.covariance) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pooled);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = kPinvTolerance * lambda.cwiseAbs().maxCoeff();
  const Eigen::VectorXd proj = eig.eigenvectors().transpose() * diff;
  double q = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) > cutoff) q += proj(i) * proj(i) / lambda(i);
  }
  return std::sqrt(std::max(q, 0.0));
}

double niqe_score(const FrameImage& luma, const NiqeModel& model, const NiqeConfig& config) {
  return niqe_score(niqe_frame_statistics(luma, config), model);
}

NiqeModel fit_pristine_model(std::span<const FrameImage> corpus, const NiqeConfig& config,
                             const PristineFitOptions& options) {
  std::vector<Eigen::MatrixXd> per_image(corpus.size());
  std::vector<bool> contributed(corpus.size(), false);
  parallel_for(corpus.size(), 0, [&](std::size_t i) {
    try {
      const NiqePatchFeatures patches = niqe_patch_features(corpus[i], config);
      const auto chosen =
          select_patches(patches, PatchSelection::Sharp, config.sharpness_fraction);
      std::vector<Eigen::Index> idx(chosen.begin(), chosen.end());
      per_image[i] = patches.features(idx, Eigen::all);
      contributed[i] = !chosen.empty();
    } catch (const DegenerateError&) {
      // Flat images simply do not contribute.
    }
  });

  std::size_t images = 0;
  Eigen::Index rows = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (contributed[i]) {
      ++images;
      rows += per_image[i].rows();
    }
  }
  if (images < options.min_images || static_cast<std::size_t>(rows) < options.min_patches) {
    throw CorpusTooSmallError("pristine corpus yielded " + std::to_string(images) +
                              " usable images and " + std::to_string(rows) +
                              " patches; need " + std::to_string(options.min_images) +
                              " images and " + std::to_string(options.min_patches) +
                              " patches");
  }

  const auto nf = static_cast<Eigen::Index>(config.feature_count());
  Eigen::MatrixXd pooled(rows, nf);
  Eigen::Index at = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!contributed[i]) continue;
    pooled.middleRows(at, per_image[i].rows()) = per_image[i];
    at += per_image[i].rows();
  }
  NiqeModel model;
  model.mean = pooled.colwise().mean().transpose();
  const Eigen::MatrixXd centred = pooled.rowwise() - model.mean.transpose();
  model.covariance = centred.transpose() * centred / static_cast<double>(rows);
  // Remove rounding asymmetry so the model passes validate().
  model.covariance = (model.covariance + model.covariance.transpose()) / 2.0;
  return model;
}

double spatial_index(std::span<const double> raw_scores, const CorpusStats& stats) {
  if (raw_scores.empty()) throw EmptyInputError("no per-frame NIQE scores");
  if (!stats.valid()) throw DegenerateError("NIQE corpus statistics have zero spread");
  double sum = 0.0;
  for (double q : raw_scores) {
    sum += rescale(q, stats, Orientation::LowerBetter, Rescale::GaussianSigmoid);
  }
  return sum / static_cast<double>(raw_scores.size());
}

}  // namespace bvista
