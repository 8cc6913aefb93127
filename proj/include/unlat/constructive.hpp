#pragma once

// Constructive algorithms on sequences: Riesz decomposition of |x| = u + v,
// Kadec-Pelczynski style disjointification of un-null sequences, extraction
// of uo-null subsequences, and the norm-null => order-null subsequence.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unlat/convergence.hpp"
#include "unlat/lattice.hpp"
#include "unlat/sequence.hpp"

namespace unlat {

/// x = y + z with |y| = u, |z| = v, built from u = a + b, v = c + d,
/// x+ = a + c, x- = b + d.
struct RieszWitness {
  Element y, z;
  Element a, b, c, d;
};

/// Uses a = x+ AND u, b = u - a, c = x+ - a, d = x- - b, y = a - b, z = c - d.
/// Throws NotADecomposition if || |x| - (u + v) || > tol ||x||, and
/// NegativePart if a, b, c or d dips below -tol max|x|.
RieszWitness riesz_decompose(const Element& x, const Element& u, const Element& v, double tol = 1e-12);

/// Residual of each witness identity, divided by max(||x||, min normal):
/// "x=y+z", "|y|=u", "|z|=v", "u=a+b", "v=c+d", "x+=a+c", "x-=b+d",
/// "a^b=0", "c^d=0".
std::vector<std::pair<std::string, double>> riesz_identity_errors(const RieszWitness& w, const Element& x,
                                                                  const Element& u, const Element& v);

enum class PreconditionMode { Advisory, Strict };

struct DisjointificationResult {
  /// alpha_k, strictly increasing, 1-based.
  std::vector<std::size_t> selected_indices;
  /// d_k.
  std::vector<Element> disjoint_parts;
  /// ||x_{alpha_k} - d_k||.
  std::vector<double> residual_norms;
  /// ||v_k|| of the finite-run perturbation (positive pass).
  std::vector<double> perturbation_norms;
  /// meet_matrix[i][k] = ||x_{alpha_i} AND x_{alpha_k}|| (moduli in the
  /// signed case) for i < k; zero on and below the diagonal.
  std::vector<std::vector<double>> meet_matrix;

  /// Verdict of the un-null precondition check (q.i. point, ts).
  bool precondition_met = true;
  std::string precondition_note;

  /// Post-hoc checks: every pair passes is_disjoint(disjoint_tol), every
  /// residual < 2^-k, every selected meet <= 2^-(i+k).
  bool disjoint_verified = false;
  bool residuals_bounded = false;
  bool meets_bounded = false;
  double disjoint_tol = 1e-12;

  bool verified() const { return disjoint_verified && residuals_bounded && meets_bounded; }
};

/// Raised when the greedy scan runs out of terms before K indices.
class HorizonExhausted : public LatticeError {
 public:
  HorizonExhausted(std::size_t k, double bound, DisjointificationResult partial);

  /// The step (1-based) whose index could not be found.
  std::size_t step() const noexcept { return k_; }
  /// Loosest meet bound the step needed (2^-(k+1)).
  double bound() const noexcept { return bound_; }
  const DisjointificationResult& partial() const noexcept { return partial_; }

 private:
  std::size_t k_;
  double bound_;
  DisjointificationResult partial_;
};

struct KpOptions {
  PreconditionMode mode = PreconditionMode::Advisory;
  double disjoint_tol = 1e-12;
};

/// Positive sequences: alpha_1 = 1, then the first index whose meet with
/// every earlier selected term x_{alpha_i} is <= 2^-(k+i);
/// v_k = sum_{i<k} z_ik + sum_{k<j<=K} z_kj with z_ik = x_{alpha_i} AND x_{alpha_k};
/// d_k = (x_{alpha_k} - v_k)+.
/// Throws NegativeInput for a negative term, NotUnNull in strict mode when
/// the precondition fails, HorizonExhausted when the scan runs dry.
DisjointificationResult kp_disjointify_positive(const VectorSequence& seq, std::size_t target_count,
                                                const ToleranceSpec& ts = {}, const KpOptions& opts = {});

/// Signed sequences: runs the positive pass on (|x_n|) to get disjoint w_k,
/// then splits x_{alpha_k} by riesz_decompose(x_{alpha_k}, w_k, |x_{alpha_k}| - w_k).
DisjointificationResult kp_disjointify(const VectorSequence& seq, std::size_t target_count,
                                       const ToleranceSpec& ts = {}, const KpOptions& opts = {});

struct UoExtraction {
  /// sum_n |x_n| / (2^n ||x_n||) over the horizon, zero terms skipped.
  Element e;
  std::vector<std::size_t> subindices;
  /// || |x_{n_k}| AND e ||, each <= 2^-k.
  std::vector<double> meet_norms;
  /// pointwise_tail of the subsequence restricted to supp(e).
  TailReport report;
};

/// n_k = first index after n_{k-1} with || |x_{n_k}| AND e || <= 2^-k, taken
/// until the horizon runs out. An all-zero sequence yields e = 0, every
/// index, and a NULL report. Throws SelectionStalled(k) if fewer than
/// `target_count` (default 1) indices are found. The report window is
/// ts.window clamped to the subsequence length.
UoExtraction uo_extract(const VectorSequence& seq, const ToleranceSpec& ts = {},
                        std::optional<std::size_t> target_count = std::nullopt);

struct OrderSubsequence {
  std::vector<std::size_t> subindices;
  /// ||x_{n_k}|| <= 2^-k.
  std::vector<double> term_norms;
  /// ||z_m|| with z_m = sum_{k>=m} |x_{n_k}| (finite run), <= 2^-(m-1).
  std::vector<double> certificate_norms;
  /// |x_{n_k}| <= z_m for k >= m and the norm bound above both hold.
  bool certified = false;
};

/// n_k = first index after n_{k-1} with ||x_{n_k}|| <= 2^-k, until the
/// horizon runs out. Throws SelectionStalled as uo_extract does.
OrderSubsequence norm_to_order_subsequence(const VectorSequence& seq,
                                           std::optional<std::size_t> target_count = std::nullopt);

/// x restricted to the support of e (zero where e vanishes).
Element restrict_to_support(const Element& x, const Element& e);

}  // namespace unlat
