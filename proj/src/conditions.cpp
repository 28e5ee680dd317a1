#include "qwork/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace qwork {

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::A1: return "A1";
    case Condition::A2: return "A2";
    case Condition::B: return "B";
    case Condition::JEclass: return "JEclass";
    case Condition::Thm2: return "Thm2";
  }
  return "?";
}

namespace {

ConditionReport make_report(Condition c, double residual, double tol, std::string context) {
  ConditionReport r;
  r.condition = c;
  r.residual = residual;
  r.tolerance = tol;
  r.passed = residual <= tol;
  r.context = std::move(context);
  return r;
}

// Tolerance for deciding when two energy combinations are the same value.
// Spectral data carries O(eps * scale) noise; generic spacings are far above.
double energy_match_tol(const SpectralDecomposition& sh, const SpectralDecomposition& shp) {
  const double scale = std::max({1.0, std::abs(sh.values.front()), std::abs(sh.values.back()),
                                 std::abs(shp.values.front()), std::abs(shp.values.back())});
  return 1e-9 * scale;
}

struct LabelledBlocks {
  std::map<std::pair<int, int>, Matrix> blocks;  // (a,k) -> accumulated element
  bool ok = true;
  bool ambiguous = false;
  double worst_unmatched = 0.0;  // distance of the farthest unmatched outcome
  std::string issue;
};

// Associate every element with a level pair (a,k) such that the element's
// outcome equals E'_k - E_a. Uses 2-index labels when the scheme carries
// them, otherwise infers from the outcome values.
LabelledBlocks label_elements(const WorkScheme& s, const SpectralDecomposition& sh,
                              const SpectralDecomposition& shp, double match_tol) {
  LabelledBlocks out;
  const bool has_pair_labels =
      !s.labels.empty() &&
      std::all_of(s.labels.begin(), s.labels.end(),
                  [](const std::vector<int>& l) { return l.size() == 2; });

  for (std::size_t i = 0; i < s.size(); ++i) {
    int a = -1;
    int k = -1;
    if (has_pair_labels) {
      a = s.labels[i][0];
      k = s.labels[i][1];
      if (a < 0 || a >= sh.clusters() || k < 0 || k >= shp.clusters()) {
        out.ok = false;
        out.issue = "label out of range";
        return out;
      }
    } else {
      double best = std::numeric_limits<double>::infinity();
      int matches = 0;
      for (int aa = 0; aa < sh.clusters(); ++aa) {
        for (int kk = 0; kk < shp.clusters(); ++kk) {
          const double dist = std::abs(s.outcomes[i] - (shp.values[kk] - sh.values[aa]));
          if (dist <= match_tol) {
            ++matches;
            a = aa;
            k = kk;
          }
          best = std::min(best, dist);
        }
      }
      if (matches == 0) {
        out.ok = false;
        out.worst_unmatched = std::max(out.worst_unmatched, best);
        std::ostringstream os;
        os << "outcome " << s.outcomes[i] << " is not an energy difference (distance " << best
           << ")";
        out.issue = os.str();
        continue;  // keep scanning to report the worst offender
      }
      if (matches > 1) {
        out.ambiguous = true;
        out.issue = "outcome matches several level pairs (degenerate difference set)";
        return out;
      }
    }
    auto [it, inserted] = out.blocks.try_emplace({a, k}, s.elements[i]);
    if (!inserted) it->second += s.elements[i];
  }
  return out;
}

// All outcome differences distinct as (a,k) pairs.
bool differences_nondegenerate(const SpectralDecomposition& sh, const SpectralDecomposition& shp,
                               double match_tol) {
  std::vector<double> diffs;
  for (int a = 0; a < sh.clusters(); ++a)
    for (int k = 0; k < shp.clusters(); ++k) diffs.push_back(shp.values[k] - sh.values[a]);
  std::sort(diffs.begin(), diffs.end());
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (diffs[i] - diffs[i - 1] <= match_tol) return false;
  }
  return true;
}

}  // namespace

ConditionReport check_a1(const WorkScheme& s, const Process& p, const DensityMatrix& rho,
                         double tol) {
  const double measured = mean(distribution(s, rho));
  const double unmeasured = average_work_unmeasured(p, rho);
  std::ostringstream os;
  os << "mean=" << measured << " tr(rho Omega)=" << unmeasured;
  return make_report(Condition::A1, std::abs(measured - unmeasured), tol, os.str());
}

ConditionReport check_a2(const SchemeFactory& factory, const HermitianOperator& h,
                         const DensityMatrix& rho, double tol) {
  const Process trivial(h, h, UnitaryOperator(Matrix::Identity(h.dim(), h.dim())));
  const WorkScheme s = factory(trivial, rho);
  // Zero-work window: the aggregation tolerance scaled by H's spectrum, so a
  // numerically-zero operator scheme still counts its outcomes as zero.
  const SpectralDecomposition sh = eigh(h);
  const double span = sh.values.back() - sh.values.front();
  const double zero_tol = std::max(1e-9 * span, 1e-14);
  const WorkDistribution d = distribution(s, rho, zero_tol);
  const double residual = 1.0 - mass_near_zero(d, zero_tol);
  std::ostringstream os;
  os << "zero-outcome mass=" << 1.0 - residual << " window=" << zero_tol;
  return make_report(Condition::A2, residual, tol, os.str());
}

ConditionReport check_b(const WorkScheme& s, const HermitianOperator& h,
                        const HermitianOperator& hp, double beta, double tol) {
  if (!(beta > 0.0)) throw std::invalid_argument("check_b: beta must be > 0");
  const GibbsState tau = gibbs(h, beta);
  const double lhs = exp_average(distribution(s, tau.state), beta);
  const double rhs = std::exp(log_partition(hp, beta) - tau.log_partition);
  std::ostringstream os;
  os << "<e^{-beta W}>=" << lhs << " e^{-beta dF}=" << rhs;
  return make_report(Condition::B, std::abs(lhs - rhs), tol, os.str());
}

ConditionReport je_class_validate(const WorkScheme& s, const HermitianOperator& h,
                                  const HermitianOperator& hp, double tol) {
  const SpectralDecomposition sh = eigh(h);
  const SpectralDecomposition shp = eigh(hp);
  const double match_tol = energy_match_tol(sh, shp);

  const LabelledBlocks lab = label_elements(s, sh, shp, match_tol);
  if (lab.ambiguous) {
    ConditionReport r = make_report(Condition::JEclass, 0.0, tol, lab.issue);
    r.skipped = true;
    r.passed = false;
    return r;
  }
  if (!lab.ok) {
    ConditionReport r = make_report(Condition::JEclass,
                                    std::max(lab.worst_unmatched, tol * 2.0), tol, lab.issue);
    r.passed = false;
    return r;
  }

  double residual = 0.0;
  // Trace sums per final level: contributions of all (b,m,a) triples whose
  // combination E'_m - E_b + E_a lands on E'_k must add up to tr P'_k, and
  // combinations that miss the final spectrum must carry no weight.
  std::vector<double> sums(shp.clusters(), 0.0);
  for (const auto& [bm, mat] : lab.blocks) {
    const auto [b, m] = bm;
    for (int a = 0; a < sh.clusters(); ++a) {
      const double combo = shp.values[m] - sh.values[b] + sh.values[a];
      const double weight = (mat * sh.projectors[a]).trace().real();
      bool matched = false;
      for (int k = 0; k < shp.clusters(); ++k) {
        if (std::abs(combo - shp.values[k]) <= match_tol) {
          sums[k] += weight;
          matched = true;
          break;
        }
      }
      if (!matched) residual = std::max(residual, std::abs(weight));
    }
  }
  for (int k = 0; k < shp.clusters(); ++k) {
    residual = std::max(residual, std::abs(sums[k] - static_cast<double>(shp.degeneracies[k])));
  }
  std::ostringstream os;
  os << "blocks=" << lab.blocks.size() << " max violation=" << residual;
  return make_report(Condition::JEclass, residual, tol, os.str());
}

ConditionReport nondegenerate_checks(const WorkScheme& s, const HermitianOperator& h,
                                     const HermitianOperator& hp, double tol) {
  const SpectralDecomposition sh = eigh(h);
  const SpectralDecomposition shp = eigh(hp);
  const double match_tol = energy_match_tol(sh, shp);

  if (!differences_nondegenerate(sh, shp, match_tol)) {
    ConditionReport r = make_report(Condition::JEclass, 0.0, tol,
                                    "degenerate outcome differences; checks not applicable");
    r.skipped = true;
    r.passed = false;
    return r;
  }
  const LabelledBlocks lab = label_elements(s, sh, shp, match_tol);
  if (!lab.ok || lab.ambiguous) {
    ConditionReport r =
        make_report(Condition::JEclass, std::max(lab.worst_unmatched, tol * 2.0), tol, lab.issue);
    r.passed = false;
    return r;
  }

  double residual = 0.0;
  std::vector<double> sums(shp.clusters(), 0.0);
  std::pair<int, int> worst{-1, -1};
  for (const auto& [ak, mat] : lab.blocks) {
    const auto [a, k] = ak;
    const Matrix compressed = sh.projectors[a] * mat * sh.projectors[a];
    const double block_violation = max_abs(Matrix(mat - compressed));
    if (block_violation > residual) {
      residual = block_violation;
      worst = ak;
    }
    sums[k] += mat.trace().real();
  }
  for (int k = 0; k < shp.clusters(); ++k) {
    const double v = std::abs(sums[k] - static_cast<double>(shp.degeneracies[k]));
    if (v > residual) {
      residual = v;
      worst = {-1, k};
    }
  }
  std::ostringstream os;
  os << "max violation=" << residual;
  if (worst.first >= 0) os << " at block (" << worst.first << "," << worst.second << ")";
  return make_report(Condition::JEclass, residual, tol, os.str());
}

ConditionReport theorem2_trace_condition(const WorkScheme& s, const Process& p, double tol) {
  const SpectralDecomposition sh = eigh(p.h_initial);
  const SpectralDecomposition shp = eigh(p.h_final);
  const double match_tol = energy_match_tol(sh, shp);

  if (!differences_nondegenerate(sh, shp, match_tol)) {
    ConditionReport r = make_report(Condition::Thm2, 0.0, tol,
                                    "degenerate outcome differences; checks not applicable");
    r.skipped = true;
    r.passed = false;
    return r;
  }
  const LabelledBlocks lab = label_elements(s, sh, shp, match_tol);
  if (!lab.ok || lab.ambiguous) {
    ConditionReport r =
        make_report(Condition::Thm2, std::max(lab.worst_unmatched, tol * 2.0), tol, lab.issue);
    r.passed = false;
    return r;
  }

  const Matrix& u = p.evolution.entries();
  const bool h_nondegenerate =
      std::all_of(sh.degeneracies.begin(), sh.degeneracies.end(), [](int g) { return g == 1; });

  double residual = 0.0;
  for (int a = 0; a < sh.clusters(); ++a) {
    for (int k = 0; k < shp.clusters(); ++k) {
      const Matrix tpm_elem =
          sh.projectors[a] * (u.adjoint() * shp.projectors[k] * u) * sh.projectors[a];
      const auto it = lab.blocks.find({a, k});
      const Matrix elem = it != lab.blocks.end() ? it->second : Matrix::Zero(s.dim, s.dim);
      residual = std::max(residual, std::abs((elem - tpm_elem).trace().real()));
      if (h_nondegenerate) {
        residual = std::max(residual, max_abs(Matrix(elem - tpm_elem)));
      }
    }
  }
  std::ostringstream os;
  os << "max violation=" << residual << (h_nondegenerate ? " (elementwise)" : " (traces only)");
  return make_report(Condition::Thm2, residual, tol, os.str());
}

}  // namespace qwork
