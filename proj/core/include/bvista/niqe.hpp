#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bvista/aggregation.hpp"
#include "bvista/frame.hpp"
#include "bvista/image_plane.hpp"

namespace bvista {

enum class PatchSelection {
  All,    // every patch (published scoring procedure)
  Sharp,  // patches whose mean local deviation >= sharpness_fraction * max
};

/// Natural-scene-statistics constants. Defaults are those of the original
/// NIQE release.
struct NiqeConfig {
  int window_size = 7;
  double window_sigma = 7.0 / 6.0;
  double stabilizer = 1.0;  // C in (I - mu) / (sigma + C), [0, 255] scale
  int patch_size = 96;
  int scales = 2;
  double sharpness_fraction = 0.75;
  /// Patch selection used when scoring a frame. Model fitting always uses
  /// PatchSelection::Sharp.
  PatchSelection scoring_selection = PatchSelection::All;

  std::size_t feature_count() const noexcept {
    return static_cast<std::size_t>(18 * scales);
  }
};

/// Mean-subtracted contrast-normalised coefficients plus the local
/// deviation field they were normalised by.
struct MscnResult {
  Plane mscn;
  Plane sigma;
};

/// Throws ArgumentError for multi-channel frames or frames smaller than the
/// window in either dimension.
MscnResult compute_mscn_fields(const FrameImage& luma, const NiqeConfig& config = {});
Plane compute_mscn(const FrameImage& luma, const NiqeConfig& config = {});

/// 18 statistics of one MSCN block: AGGD (alpha, mean scale) of the
/// coefficients, then (alpha, eta, beta_l, beta_r) of the products with the
/// H, V, D1 and D2 neighbours (circular within the block).
/// Throws DegenerateError if any fit is degenerate.
std::vector<double> mscn_block_features(const Plane& mscn, int x0, int y0, int w, int h);

/// Per-patch features of a frame: one row per usable patch (degenerate
/// patches are dropped), feature_count() columns, plus the scale-1 mean
/// local deviation of each kept patch.
struct NiqePatchFeatures {
  Eigen::MatrixXd features;
  std::vector<double> sharpness;
  std::size_t total_patches = 0;
  bool single_patch_mode = false;
};

/// Frames whose smaller side is below 2 * patch_size are treated as one
/// whole-frame patch. Throws DegenerateError when no patch is usable.
NiqePatchFeatures niqe_patch_features(const FrameImage& luma, const NiqeConfig& config = {});

/// Row indices of patches kept under `selection`.
std::vector<std::size_t> select_patches(const NiqePatchFeatures& patches,
                                        PatchSelection selection,
                                        double sharpness_fraction);

/// Mean feature vector and sample covariance over the selected patches.
struct NiqeFrameStatistics {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  std::size_t patch_count = 0;
};

NiqeFrameStatistics niqe_frame_statistics(const FrameImage& luma,
                                          const NiqeConfig& config = {});

/// Mean feature vector of the frame (the NiqeFeatureVector).
Eigen::VectorXd niqe_features(const FrameImage& luma, const NiqeConfig& config = {});

/// Pristine multivariate Gaussian.
struct NiqeModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  /// Throws FormatError unless square, symmetric within 1e-9 and with every
  /// eigenvalue >= -1e-8.
  void validate() const;
};

/// `NIQE-MVG <d>` header, d means, then d rows of d covariance entries.
NiqeModel read_niqe_model(const std::filesystem::path& path);
void write_niqe_model(const std::filesystem::path& path, const NiqeModel& model);

/// sqrt((v1 - v2)^T pinv((S1 + S2) / 2) (v1 - v2)); singular values below
/// 1e-10 of the largest are discarded. Throws ArgumentError on non-finite
/// statistics or dimension mismatch.
double niqe_score(const NiqeFrameStatistics& frame, const NiqeModel& model);
double niqe_score(const FrameImage& luma, const NiqeModel& model,
                  const NiqeConfig& config = {});

struct PristineFitOptions {
  std::size_t min_images = 10;
  std::size_t min_patches = 2;
};

/// Mean and population covariance of all sharp-patch feature vectors
/// pooled across the corpus. Images without usable patches are skipped;
/// throws CorpusTooSmallError when fewer than min_images contribute or
/// fewer than min_patches are pooled.
NiqeModel fit_pristine_model(std::span<const FrameImage> corpus,
                             const NiqeConfig& config = {},
                             const PristineFitOptions& options = {});

/// Mean over frames of 1 / (1 + e^z), z = (q - mean) / std. Lower raw NIQE
/// maps closer to 1. Throws DegenerateError on invalid stats and
/// EmptyInputError on no scores.
double spatial_index(std::span<const double> raw_scores, const CorpusStats& stats);

}  // namespace bvista
