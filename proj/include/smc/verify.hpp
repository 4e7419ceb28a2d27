#pragma once
// Every check that applies to a piece of data, run in one pass.
#include <optional>
#include <string>
#include <vector>

#include "smc/catalogue.hpp"

namespace smc {

struct VerifyResult {
  std::vector<Report> reports;
  std::optional<NaiveFusion> nhat;
  std::string stratum;  // empty if the Galois group could not be computed
  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass()) return false;
    return true;
  }
};

// `expect_stratum` accepts any spelling normalize_stratum understands (or a generator listing for r != 4).
inline VerifyResult verify_all(const SMCData& d, const std::optional<std::string>& expect_stratum = std::nullopt) {
  VerifyResult out;
  auto& reps = out.reports;
  reps.push_back(check_dimensions(d));
  reps.push_back(check_orthogonality(d));

  Report ver{"Verlinde integrality", {}, {}};
  auto vc = verlinde_collect(d);
  for (const auto& [where, value] : vc.bad) ver.fail("n-hat_ij^k nonnegative integer", where, value);
  reps.push_back(ver);
  if (vc.ok()) {
    out.nhat = vc.nhat;
    reps.push_back(check_naive_symmetries(vc.nhat, d.dual));
    reps.push_back(check_commutation(vc.nhat));
    reps.push_back(check_eigenvectors(d, vc.nhat));
    reps.push_back(check_fs_indicators(d, vc.nhat));
  }
  reps.push_back(check_divisibility(d));
  reps.push_back(check_twists(d));

  if (d.fusion) {
    reps.push_back(check_fusion_axioms(*d.fusion));
    Report ind{"induced naive fusion matches Verlinde", {}, {}};
    if (d.fusion->rank != 2 * d.r) {
      ind.fail("fusion rank = 2r", {d.fusion->rank});
    } else if (vc.ok()) {
      NaiveFusion n = induced_naive(*d.fusion);
      for (int i = 0; i < d.r; ++i)
        for (int j = 0; j < d.r; ++j)
          for (int k = 0; k < d.r; ++k)
            if (n(i, j, k) != vc.nhat(i, j, k))
              ind.fail("N_ij^k + N_ij^fk = n-hat_ij^k", {i, j, k}, std::to_string(n(i, j, k) - vc.nhat(i, j, k)));
    }
    reps.push_back(ind);
    if (d.hatT && d.fusion->rank == 2 * d.r) reps.push_back(check_balancing(d, *d.fusion));
  }

  Report gal{"Galois group", {}, {}};
  try {
    GaloisGroup g = compute_galois_group(d);
    reps.push_back(check_group_properties(d, g));
    reps.push_back(check_s_symmetry(d, g).report);
    out.stratum = catalogue_detail::group_label(d, g);
    gal.notes.push_back("group " + out.stratum);
  } catch (const std::exception& e) {
    gal.fail("columns of S-hat permuted by every automorphism", {}, e.what());
  }
  reps.push_back(gal);

  if (expect_stratum) {
    Report st{"stratum", {}, {}};
    std::string want = *expect_stratum;
    try {
      want = normalize_stratum(want);
    } catch (const std::invalid_argument&) {
    }
    if (out.stratum != want) st.fail("stratum = " + want, {}, out.stratum.empty() ? "unknown" : out.stratum);
    reps.push_back(st);
  }
  return out;
}

}  // namespace smc
