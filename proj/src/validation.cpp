#include <algorithm>
#include <cmath>
#include <limits>

#include "gwkde/asymptotics.hpp"
#include "gwkde/errors.hpp"
#include "gwkde/experiments.hpp"
#include "gwkde/quadrature.hpp"

namespace gwkde {
namespace {

// Fills rec.oracle and rec.expansion for one (x, bandwidth) cell; throws
// the library's error types when the cell is not evaluable.
using CellEval = std::function<void(double, double, ValidationRecord&)>;

void run_family(ValidationReport& rep, const std::string& check,
                const std::vector<double>& xs, const std::vector<double>& hs,
                double a, double threshold, const CellEval& eval,
                const std::string& discrepancy_note) {
  FamilySummary fam;
  fam.check = check;
  for (double x : xs) {
    std::vector<std::size_t> idx;
    idx.reserve(hs.size());
    for (double h : hs) {
      ValidationRecord rec;
      rec.check = check;
      rec.x = x;
      rec.a = a;
      rec.h_or_b = h;
      try {
        eval(x, h, rec);
        rec.residual = std::abs(rec.oracle - rec.expansion);
        rec.valid = true;
        rec.pass = true;  // provisional; ratio rule below may flip it
      } catch (const oracle_error& e) {
        rec.valid = false;
        rec.note = e.what();
        ++rep.oracle_failures;
      } catch (const error& e) {
        rec.valid = false;
        rec.note = e.what();
      }
      idx.push_back(rep.records.size());
      rep.records.push_back(std::move(rec));
    }
    for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
      ValidationRecord& coarse = rep.records[idx[j]];
      ValidationRecord& fine = rep.records[idx[j + 1]];
      if (!coarse.valid || !fine.valid) continue;
      RatioRecord rr;
      rr.check = check;
      rr.x = x;
      rr.h_coarse = coarse.h_or_b;
      rr.h_fine = fine.h_or_b;
      if (coarse.residual == 0.0) {
        rr.ratio = fine.residual == 0.0
                       ? 0.0
                       : std::numeric_limits<double>::infinity();
      } else {
        rr.ratio = fine.residual / coarse.residual;
      }
      rr.pass = rr.ratio <= threshold;
      fine.pass = rr.pass;
      ++fam.ratio_cells;
      if (rr.pass) ++fam.passed;
      rep.ratios.push_back(rr);
    }
  }
  fam.pass_fraction =
      fam.ratio_cells
          ? static_cast<double>(fam.passed) / static_cast<double>(fam.ratio_cells)
          : 0.0;
  if (fam.ratio_cells == 0 || fam.pass_fraction < 0.8) {
    fam.discrepancy = true;
    fam.note = fam.ratio_cells == 0 && discrepancy_note.empty()
                   ? "no evaluable ratio cells on this grid"
                   : discrepancy_note;
    if (fam.note.empty()) {
      fam.note = "residual decay misses the threshold on this grid";
    }
  }
  rep.families.push_back(std::move(fam));
}

}  // namespace

ValidationReport run_asymptotics_validation(
    const ReferenceDensity& f, double a, double c1, double c2,
    const std::vector<double>& x_grid, const std::vector<double>& h_grid,
    double threshold) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw config_error("validation requires a > 0");
  }
  if (!(c1 < 0.0) || !(c2 < 0.0)) {
    throw config_error("validation requires c1 < 0 and c2 < 0");
  }
  if (x_grid.empty() || h_grid.empty()) {
    throw config_error("validation needs nonempty x and bandwidth grids");
  }
  for (double x : x_grid) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw config_error("validation x grid must be positive and finite");
    }
  }
  for (double h : h_grid) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw config_error("validation bandwidth grid must be positive");
    }
  }
  ValidationReport rep;
  rep.a = a;
  rep.c1 = c1;
  rep.c2 = c2;
  rep.threshold = threshold;

  std::vector<double> xs_gamma, xs_weibull;
  for (double x : x_grid) {
    if (x <= a) xs_gamma.push_back(x);
    if (x > a) xs_weibull.push_back(x);
  }

  run_family(
      rep, "gamma_moment", xs_gamma, h_grid, a, threshold,
      [&](double x, double h, ValidationRecord& rec) {
        rec.oracle = asym::exact_gamma_moment_oracle(x, h, a, c1, f);
        rec.expansion = asym::gamma_moment_expansion(x, h, a, c1, f);
      },
      "residual approaches a bandwidth-independent floor: the kernel scale "
      "stays at a, so curvature terms of order a^2 persist as h -> 0; the "
      "expansion tracks the oracle only when a shrinks together with h");

  run_family(
      rep, "weibull_moment", xs_weibull, h_grid, a, threshold,
      [&](double x, double b, ValidationRecord& rec) {
        rec.oracle = asym::exact_weibull_moment_oracle(x, b, a, c2, f);
        rec.expansion = asym::weibull_moment_expansion(x, b, a, c2, f);
      },
      "residual approaches a bandwidth-independent floor: the kernel scale "
      "stays at a, so the shape-only expansion keeps an a-dependent offset "
      "as b -> 0");

  run_family(
      rep, "squared_norm", xs_gamma, h_grid, a, threshold,
      [&](double x, double h, ValidationRecord& rec) {
        rec.oracle = asym::squared_norm_direct(x, h, a, c1);
        rec.expansion = asym::squared_norm_expansion(x, h, a, c1);
      },
      "the closed form rests on a large-shape factorial approximation whose "
      "error is set by x/a and does not shrink with the bandwidth");

  run_family(
      rep, "weibull_mean", xs_weibull, h_grid, a, threshold,
      [&](double x, double b, ValidationRecord& rec) {
        rec.oracle = asym::weibull_mean_exact(x, b, a, c2);
        rec.expansion = asym::weibull_mean_expansion(x, b, a, c2);
      },
      "first-order mean expansion misses the decay threshold on this grid");

  run_family(
      rep, "weibull_var", xs_weibull, h_grid, a, threshold,
      [&](double x, double b, ValidationRecord& rec) {
        rec.oracle = asym::weibull_var_exact(x, b, a, c2);
        rec.expansion = asym::weibull_var_expansion(x, b, a, c2);
      },
      "the expansion follows a variance form that squares the difference of "
      "the two gamma factors, while the exact second central moment "
      "subtracts the squared mean; the gap persists as b -> 0 and is "
      "reported, not repaired");

  run_family(
      rep, "weibull_var_printed", xs_weibull, h_grid, a, threshold,
      [&](double x, double b, ValidationRecord& rec) {
        rec.oracle = asym::weibull_var_printed(x, b, a, c2);
        rec.expansion = asym::weibull_var_expansion(x, b, a, c2);
      },
      "first-order variance expansion misses the decay threshold against "
      "its own closed form on this grid");

  {
    // Single algebraic cross-check at the junction: the matching-condition
    // coefficients against the directly expanded one.
    ValidationRecord rec;
    rec.check = "d2_decomposition";
    rec.x = a;
    rec.a = a;
    rec.h_or_b = 0.0;
    FamilySummary fam;
    fam.check = "d2_decomposition";
    try {
      auto [d1_at_a, d2_at_a] = asym::var_weibull_terms(a, a, c2, f);
      (void)d1_at_a;
      auto [d21, d22] = asym::d21_d22(a, f);
      rec.oracle = d2_at_a;
      rec.expansion = d21 + c2 * d22;
      rec.residual = std::abs(rec.oracle - rec.expansion);
      rec.valid = true;
      double tol = 1e-9 * std::max(1.0, std::abs(rec.oracle));
      rec.pass = rec.residual <= tol;
      if (rec.pass) {
        fam.passed = 1;
        fam.pass_fraction = 1.0;
      } else {
        fam.discrepancy = true;
        fam.note =
            "d21 + c2 * d22 does not reproduce the directly expanded "
            "junction coefficient; both values are reported for audit";
        rec.note = fam.note;
      }
    } catch (const error& e) {
      rec.valid = false;
      rec.note = e.what();
      fam.discrepancy = true;
      fam.note = std::string("skipped: ") + e.what();
    }
    rep.records.push_back(std::move(rec));
    rep.families.push_back(std::move(fam));
  }

  rep.all_ratios_pass = std::all_of(rep.ratios.begin(), rep.ratios.end(),
                                    [](const RatioRecord& r) { return r.pass; });
  return rep;
}

nlohmann::ordered_json validation_json(const ValidationReport& rep) {
  nlohmann::ordered_json j;
  j["format_version"] = "1";
  j["kind"] = "asymptotics_validation";
  j["a"] = rep.a;
  j["c1"] = rep.c1;
  j["c2"] = rep.c2;
  j["threshold"] = rep.threshold;
  j["all_ratios_pass"] = rep.all_ratios_pass;
  j["oracle_failures"] = rep.oracle_failures;
  j["families"] = nlohmann::ordered_json::array();
  for (const FamilySummary& fam : rep.families) {
    j["families"].push_back({{"check", fam.check},
                             {"ratio_cells", fam.ratio_cells},
                             {"passed", fam.passed},
                             {"pass_fraction", fam.pass_fraction},
                             {"discrepancy", fam.discrepancy},
                             {"note", fam.note}});
  }
  j["ratios"] = nlohmann::ordered_json::array();
  for (const RatioRecord& r : rep.ratios) {
    j["ratios"].push_back({{"check", r.check},
                           {"x", r.x},
                           {"h_coarse", r.h_coarse},
                           {"h_fine", r.h_fine},
                           {"ratio", r.ratio},
                           {"pass", r.pass}});
  }
  j["records"] = nlohmann::ordered_json::array();
  for (const ValidationRecord& rec : rep.records) {
    j["records"].push_back({{"check", rec.check},
                            {"x", rec.x},
                            {"a", rec.a},
                            {"h_or_b", rec.h_or_b},
                            {"oracle", rec.oracle},
                            {"expansion", rec.expansion},
                            {"residual", rec.residual},
                            {"valid", rec.valid},
                            {"pass", rec.pass},
                            {"note", rec.note}});
  }
  return j;
}

}  // namespace gwkde
