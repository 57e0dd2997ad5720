//! Acceptance suite: every published number the project commits to
//! reproducing, checked at its stated tolerance, one test per criterion.

use std::path::{Path, PathBuf};

use analyses::{
    analyze_champion_dominance, analyze_dominance, analyze_final_four_randomness, analyze_pace,
    analyze_pluralism, analyze_scorer_correlation, AnalysisReport, Cell,
};
use approx::assert_abs_diff_eq;
use dataset::{load_dataset, Dataset, Era, PeriodScheme, DEFAULT_FREE_THROW_WEIGHT};
use numerics::{
    mann_whitney_null_cdf, normal_cdf, ols_fit, signed_rank_null_cdf, spearman_tail_prob,
    spearman_upper_prob, RandomStream,
};
use stats_tests::{
    binomial_test_two_sided, mann_whitney, multinomial_mc_gof, pearson_test, runs_test,
    spearman_test, zivot_andrews, Decision, FinalFourObservation,
};

fn bundled() -> Dataset {
    let dir: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    load_dataset(&dir).expect("bundled data loads")
}

fn cell_real(cell: &Cell) -> f64 {
    match cell {
        Cell::Real(v) => *v,
        Cell::Int(v) => *v as f64,
        Cell::Text(t) => panic!("expected a number, found '{t}'"),
    }
}

fn row<'a>(report: &'a AnalysisReport, table: &str, label: &str) -> &'a [Cell] {
    let table = report.table(table).expect("table exists");
    &table
        .rows
        .iter()
        .find(|r| r.label == label)
        .unwrap_or_else(|| panic!("row '{label}' missing from {}", table.title))
        .cells
}

fn standard_normal(stream: &mut RandomStream) -> f64 {
    let u1 = 1.0 - stream.next_uniform();
    let u2 = stream.next_uniform();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[test]
fn acceptance_criterion_01_pearson_on_the_scorer_table() {
    let report = analyze_scorer_correlation(&bundled()).unwrap();
    let pearson = report.standard_test("pearson").unwrap();
    assert_abs_diff_eq!(pearson.extras["r"], -0.4002, epsilon = 0.0005);
    assert_abs_diff_eq!(pearson.statistic, -2.2271, epsilon = 0.005);
    assert_abs_diff_eq!(pearson.p_value, 0.0348, epsilon = 0.0005);
    println!("acceptance criterion 01: pass (pearson r/t/p)");
}

#[test]
fn acceptance_criterion_02_spearman_on_the_scorer_table() {
    let report = analyze_scorer_correlation(&bundled()).unwrap();
    let spearman = report.standard_test("spearman").unwrap();
    assert_abs_diff_eq!(spearman.extras["rho"], -0.3925, epsilon = 0.001);
    assert_abs_diff_eq!(spearman.statistic, 5088.0, epsilon = 1.0);
    assert_abs_diff_eq!(spearman.p_value, 0.0389, epsilon = 0.001);
    println!("acceptance criterion 02: pass (spearman rho/S/p)");
}

#[test]
fn acceptance_criterion_03_binomial_title_probabilities() {
    let cases = [
        (2u64, 2u64, 0.0625),
        (3, 4, 0.05078),
        (6, 12, 0.08608),
        (5, 8, 0.02730),
    ];
    for (k, n, expected) in cases {
        let result = binomial_test_two_sided(k, n, 0.25).unwrap();
        assert_abs_diff_eq!(result.p_value, expected, epsilon = 1e-4);
    }
    println!("acceptance criterion 03: pass (four binomial p-values)");
}

#[test]
fn acceptance_criterion_04_expected_titles_table() {
    let report = analyze_final_four_randomness(&bundled(), Era::Full, 1_000, 0).unwrap();
    let table = report.table("expected_and_observed_titles").unwrap();
    assert_eq!(table.rows.len(), 50);
    for team_row in &table.rows {
        let appearances = cell_real(&team_row.cells[0]);
        let expected = cell_real(&team_row.cells[1]);
        let observed = cell_real(&team_row.cells[2]);
        let difference = cell_real(&team_row.cells[3]);
        assert_eq!(expected, 0.25 * appearances, "row {}", team_row.label);
        assert_eq!(difference, observed - expected, "row {}", team_row.label);
    }
    let real_madrid = row(&report, "expected_and_observed_titles", "Real Madrid");
    assert_eq!(cell_real(&real_madrid[1]), 8.0);
    assert_eq!(cell_real(&real_madrid[2]), 10.0);
    assert_eq!(cell_real(&real_madrid[3]), 2.0);
    let cska = row(&report, "expected_and_observed_titles", "CSKA Moscow");
    assert_eq!(cell_real(&cska[1]), 7.25);
    assert_eq!(cell_real(&cska[2]), 7.0);
    assert_eq!(cell_real(&cska[3]), -0.25);
    let panathinaikos = row(&report, "expected_and_observed_titles", "Panathinaikos");
    assert_eq!(cell_real(&panathinaikos[1]), 3.0);
    assert_eq!(cell_real(&panathinaikos[2]), 6.0);
    assert_eq!(cell_real(&panathinaikos[3]), 3.0);
    println!("acceptance criterion 04: pass (50 expected-title rows exact)");
}

#[test]
fn acceptance_criterion_05_country_and_region_rollup() {
    let expected: [(&str, [i64; 4]); 21] = [
        ("Spain", [13, 16, 57, 6]),
        ("Italy", [13, 13, 44, 9]),
        ("Greece", [9, 7, 29, 5]),
        ("Russia", [7, 6, 30, 2]),
        ("Israel", [6, 9, 20, 1]),
        ("Croatia", [5, 1, 9, 3]),
        ("Latvia", [3, 1, 4, 1]),
        ("Turkey", [1, 2, 6, 2]),
        ("Lithuania", [1, 1, 3, 1]),
        ("Georgia", [1, 1, 3, 1]),
        ("Bosnia", [1, 0, 4, 1]),
        ("Serbia", [1, 0, 10, 4]),
        ("France", [1, 0, 9, 4]),
        ("Czech Republic", [0, 3, 9, 2]),
        ("Bulgaria", [0, 2, 2, 1]),
        ("Slovenia", [0, 0, 3, 1]),
        ("Poland", [0, 0, 2, 2]),
        ("Romania", [0, 0, 1, 1]),
        ("Netherlands", [0, 0, 1, 1]),
        ("Hungary", [0, 0, 1, 1]),
        ("Belgium", [0, 0, 1, 1]),
    ];
    let report = analyze_dominance(&bundled(), &PeriodScheme::default_history()).unwrap();
    let table = report.table("titles_and_appearances_by_country").unwrap();
    assert_eq!(table.rows.len(), expected.len());
    for (country, cells) in expected {
        let found = row(&report, "titles_and_appearances_by_country", country);
        let values: Vec<i64> = found.iter().map(|c| cell_real(c) as i64).collect();
        assert_eq!(values, cells.to_vec(), "country {country}");
    }

    let appearances = report.table("appearances_by_region").unwrap();
    let mut totals = [0.0f64; 4];
    for period_row in &appearances.rows {
        for (slot, cell) in period_row.cells.iter().enumerate() {
            totals[slot] += cell_real(cell);
        }
    }
    assert_eq!(totals, [57.0, 44.0, 66.0, 81.0]);
    println!("acceptance criterion 05: pass (21 country rows and region totals)");
}

#[test]
fn acceptance_criterion_06_decade_scoring_aggregates() {
    let expected = [
        ("1958-1970", 82.61, 72.90, 77.75),
        ("1971-1980", 91.20, 77.88, 84.54),
        ("1981-1990", 88.27, 81.92, 85.09),
        ("1991-2000", 72.92, 65.61, 69.27),
        ("2001-2010", 82.94, 74.38, 78.66),
        ("2011-2018", 81.86, 75.18, 78.52),
    ];
    let report = analyze_champion_dominance(&bundled(), &PeriodScheme::default_history()).unwrap();
    assert_eq!(report.table("scoring_by_period").unwrap().rows.len(), expected.len());
    for (period, champion, opponent, per_team) in expected {
        let cells = row(&report, "scoring_by_period", period);
        assert_abs_diff_eq!(cell_real(&cells[0]), champion, epsilon = 0.05);
        assert_abs_diff_eq!(cell_real(&cells[1]), opponent, epsilon = 0.05);
        assert_abs_diff_eq!(cell_real(&cells[2]), per_team, epsilon = 0.05);
    }
    println!("acceptance criterion 06: pass (18 decade scoring cells)");
}

#[test]
fn acceptance_criterion_07_runs_test_mean_and_tail() {
    // 31 runs over 24 values above and 40 below the threshold: the expected
    // run count is 1 + 2*24*40/64 = 31, so z must vanish identically.
    let mut values = Vec::new();
    for block in 0..15 {
        values.push(1.0);
        values.push(-1.0);
        if block == 14 {
            values.extend(std::iter::repeat(-1.0).take(25));
        }
    }
    values.extend(std::iter::repeat(1.0).take(9));
    let result = runs_test(&values, 0.0).unwrap();
    assert_eq!(result.n_summary["n_above"], 24);
    assert_eq!(result.n_summary["n_below"], 40);
    assert_eq!(result.n_summary["runs"], 31);
    assert_eq!(result.statistic, 0.0);
    assert_eq!(result.p_value, 1.0);

    let p = 2.0 * normal_cdf(-1.5607);
    assert_abs_diff_eq!(p, 0.1186, epsilon = 0.0002);
    println!("acceptance criterion 07: pass (z = 0 exactly; z = 1.5607 maps to p = 0.1186)");
}

#[test]
fn acceptance_criterion_08_monte_carlo_title_distribution() {
    let data = bundled();

    let full = analyze_final_four_randomness(&data, Era::Full, 100_000, 0).unwrap();
    let result = &full.standard_test("multinomial").unwrap();
    assert!(
        (0.535..=0.555).contains(&result.p_value),
        "full-era p {}",
        result.p_value
    );
    let se = result.extras["mc_standard_error"];
    assert!((0.0014..=0.0017).contains(&se), "full-era se {se}");

    let modern = analyze_final_four_randomness(&data, Era::Modern, 100_000, 0).unwrap();
    let result = &modern.standard_test("multinomial").unwrap();
    assert!(
        (0.672..=0.692).contains(&result.p_value),
        "modern-era p {}",
        result.p_value
    );
    println!("acceptance criterion 08: pass (MC p-hat bands, both eras)");
}

#[test]
fn acceptance_criterion_09_wilcoxon_share_differences() {
    let report = analyze_pluralism(&bundled(), None, None).unwrap();
    let full = report.standard_test("wilcoxon_full").unwrap();
    assert_eq!(full.statistic, 824.0);
    assert!(
        (0.145..=0.155).contains(&full.p_value),
        "full p {}",
        full.p_value
    );
    let modern = report.standard_test("wilcoxon_modern").unwrap();
    assert_eq!(modern.statistic, 42.5);
    assert_abs_diff_eq!(modern.p_value, 0.0206, epsilon = 0.002);
    println!("acceptance criterion 09: pass (V = 824 and V = 42.5)");
}

#[test]
fn acceptance_criterion_10_mann_whitney_possessions() {
    let report = analyze_pace(&bundled(), DEFAULT_FREE_THROW_WEIGHT, None, None).unwrap();
    let before = row(&report, "possession_groups", "before_break");
    let after = row(&report, "possession_groups", "after_break");
    assert_abs_diff_eq!(cell_real(&before[1]), 66.25, epsilon = 0.05);
    assert_abs_diff_eq!(cell_real(&after[1]), 71.33, epsilon = 0.05);
    let test = report.standard_test("mann_whitney").unwrap();
    assert_eq!(test.statistic, 84.0);
    assert_abs_diff_eq!(test.p_value, 0.0103, epsilon = 0.002);
    println!("acceptance criterion 10: pass (possession group means and U test)");
}

#[test]
fn acceptance_criterion_11_structural_break_location() {
    let report = analyze_pluralism(&bundled(), None, None).unwrap();
    let break_test = report.break_test("zivot_andrews").unwrap();
    assert_eq!(break_test.break_label, "1997-98");
    assert_abs_diff_eq!(break_test.base.statistic, -4.35, epsilon = 0.15);
    assert_eq!(break_test.decision_at["0.10"], Decision::FailToReject);
    println!("acceptance criterion 11: pass (break at 1997-98, fail to reject at 10%)");
}

#[test]
fn acceptance_criterion_12_friedman_region_comparisons() {
    let report = analyze_dominance(&bundled(), &PeriodScheme::default_history()).unwrap();
    let appearances = report.standard_test("friedman_appearances").unwrap();
    assert!(
        (5.5..=7.5).contains(&appearances.statistic),
        "appearances statistic {}",
        appearances.statistic
    );
    assert!(appearances.p_value < 0.15, "appearances p {}", appearances.p_value);
    let titles = report.standard_test("friedman_titles").unwrap();
    assert!(titles.statistic < 2.0, "titles statistic {}", titles.statistic);
    assert!(titles.p_value > 0.7, "titles p {}", titles.p_value);

    assert_abs_diff_eq!(appearances.statistic, 6.5789, epsilon = 1e-4);
    assert_abs_diff_eq!(titles.statistic, 0.7627, epsilon = 1e-4);
    println!("acceptance criterion 12: pass (friedman bands and printed values)");
}

#[test]
fn acceptance_criterion_13_exact_nulls_match_enumeration() {
    for n in 1..=10usize {
        let max_sum = n * (n + 1) / 2;
        let mut counts = vec![0u64; max_sum + 1];
        for mask in 0u32..(1 << n) {
            let total: usize = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).sum();
            counts[total] += 1;
        }
        let mut cumulative = 0u64;
        for v in 0..max_sum {
            cumulative += counts[v];
            let expected = cumulative as f64 / (1u64 << n) as f64;
            assert_eq!(signed_rank_null_cdf(n, v as f64).unwrap(), expected);
        }
    }

    for n1 in 1..=6usize {
        for n2 in 1..=6usize {
            let n = n1 + n2;
            let u_max = n1 * n2;
            let mut counts = vec![0u64; u_max + 1];
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != n1 {
                    continue;
                }
                let rank_sum: usize = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).sum();
                counts[rank_sum - n1 * (n1 + 1) / 2] += 1;
            }
            let total: u64 = counts.iter().sum();
            let mut cumulative = 0u64;
            for u in 0..u_max {
                cumulative += counts[u];
                let expected = cumulative as f64 / total as f64;
                assert_eq!(mann_whitney_null_cdf(n1, n2, u as f64).unwrap(), expected);
            }
        }
    }

    for n in 2..=7usize {
        let s_max = n * (n * n - 1) / 3;
        let mut counts = vec![0u64; s_max + 1];
        let mut ranks: Vec<usize> = (0..n).collect();
        permute(&mut ranks, 0, &mut |perm| {
            let s: usize = perm
                .iter()
                .enumerate()
                .map(|(i, &r)| (i as i64 - r as i64).pow(2) as usize)
                .sum();
            counts[s] += 1;
        });
        let total: u64 = counts.iter().sum();
        let mut below = 0u64;
        for s in 0..=s_max {
            below += counts[s];
            let lower = below as f64 / total as f64;
            let upper = (total - (below - counts[s])) as f64 / total as f64;
            assert_abs_diff_eq!(
                spearman_tail_prob(n, s as f64).unwrap(),
                lower,
                epsilon = 1e-10
            );
            if s > 0 {
                assert_abs_diff_eq!(
                    spearman_upper_prob(n, s as f64).unwrap(),
                    upper,
                    epsilon = 1e-10
                );
            }
        }
    }
    println!("acceptance criterion 13: pass (three exact nulls equal enumeration)");
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

#[test]
fn acceptance_criterion_14_randomized_invariance_suites() {
    // Positive affine maps leave both correlation tests unchanged.
    for instance in 0..1000u64 {
        let mut stream = RandomStream::new(1400, instance);
        let n = 8 + stream.next_choice(12);
        let x: Vec<f64> = (0..n).map(|_| standard_normal(&mut stream)).collect();
        let y: Vec<f64> = (0..n).map(|_| standard_normal(&mut stream)).collect();
        let (a, c) = (0.5 + 2.0 * stream.next_uniform(), 0.5 + 2.0 * stream.next_uniform());
        let (b, d) = (
            10.0 * stream.next_uniform() - 5.0,
            10.0 * stream.next_uniform() - 5.0,
        );
        let x2: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let y2: Vec<f64> = y.iter().map(|v| c * v + d).collect();

        let p1 = pearson_test(&x, &y).unwrap();
        let p2 = pearson_test(&x2, &y2).unwrap();
        assert_abs_diff_eq!(p1.extras["r"], p2.extras["r"], epsilon = 1e-10);
        assert_abs_diff_eq!(p1.statistic, p2.statistic, epsilon = 1e-10);
        assert_abs_diff_eq!(p1.p_value, p2.p_value, epsilon = 1e-10);

        let s1 = spearman_test(&x, &y).unwrap();
        let s2 = spearman_test(&x2, &y2).unwrap();
        assert_abs_diff_eq!(s1.extras["rho"], s2.extras["rho"], epsilon = 1e-10);
        assert_abs_diff_eq!(s1.statistic, s2.statistic, epsilon = 1e-10);
        assert_abs_diff_eq!(s1.p_value, s2.p_value, epsilon = 1e-10);
    }

    // Swapping the two samples flips U to its complement and keeps p.
    for instance in 0..1000u64 {
        let mut stream = RandomStream::new(2400, instance);
        let n1 = 3 + stream.next_choice(10);
        let n2 = 3 + stream.next_choice(10);
        let rounded = stream.next_uniform() < 0.3;
        let draw = |s: &mut RandomStream| {
            let v = standard_normal(s);
            if rounded {
                (v * 10.0).round() / 10.0
            } else {
                v
            }
        };
        let x: Vec<f64> = (0..n1).map(|_| draw(&mut stream)).collect();
        let y: Vec<f64> = (0..n2).map(|_| draw(&mut stream)).collect();
        let xy = mann_whitney(&x, &y, false).unwrap();
        let yx = mann_whitney(&y, &x, false).unwrap();
        assert_abs_diff_eq!(xy.p_value, yx.p_value, epsilon = 1e-12);
        assert_eq!(xy.statistic + xy.extras["u_other"], (n1 * n2) as f64);
        assert_eq!(yx.statistic, xy.extras["u_other"]);
    }

    // Two independent seeds estimate the same Monte-Carlo p-value.
    for instance in 0..1000u64 {
        let mut stream = RandomStream::new(3400, instance);
        let teams = 4 + stream.next_choice(6);
        let final_fours = 3 + stream.next_choice(5);
        let observations: Vec<FinalFourObservation> = (0..final_fours)
            .map(|_| {
                let mut participants = [0u32; 4];
                let mut filled = 0;
                while filled < 4 {
                    let candidate = stream.next_choice(teams) as u32;
                    if !participants[..filled].contains(&candidate) {
                        participants[filled] = candidate;
                        filled += 1;
                    }
                }
                let winner = participants[stream.next_choice(4)];
                FinalFourObservation {
                    participants,
                    winner,
                }
            })
            .collect();
        let first = multinomial_mc_gof(&observations, 1200, 2 * instance).unwrap();
        let second = multinomial_mc_gof(&observations, 1200, 2 * instance + 1).unwrap();
        let spread = (first.extras["mc_standard_error"].powi(2)
            + second.extras["mc_standard_error"].powi(2))
        .sqrt();
        assert!(
            (first.p_value - second.p_value).abs() <= 6.0 * spread + 1e-12,
            "instance {instance}: p {} vs {} exceeds 6 se {}",
            first.p_value,
            second.p_value,
            spread
        );
    }

    // A response inside the column span is reproduced with zero residual.
    for instance in 0..1000u64 {
        let mut stream = RandomStream::new(4400, instance);
        let rows = 12 + stream.next_choice(13);
        let cols = 2 + stream.next_choice(3);
        let beta: Vec<f64> = (0..=cols).map(|_| 6.0 * stream.next_uniform() - 3.0).collect();
        let design: Vec<Vec<f64>> = (0..rows)
            .map(|_| {
                let mut design_row = vec![1.0];
                design_row.extend((0..cols).map(|_| 4.0 * stream.next_uniform() - 2.0));
                design_row
            })
            .collect();
        let response: Vec<f64> = design
            .iter()
            .map(|design_row| design_row.iter().zip(&beta).map(|(x, b)| x * b).sum())
            .collect();
        let fit = ols_fit(&design, &response).unwrap();
        let residual_norm = fit.residuals.iter().map(|r| r * r).sum::<f64>().sqrt();
        let response_norm = response.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(
            residual_norm <= 1e-8 * response_norm.max(1.0),
            "instance {instance}: residual norm {residual_norm}"
        );
    }
    println!("acceptance criterion 14: pass (four invariance suites, 1000 instances each)");
}

#[test]
fn acceptance_criterion_15_break_test_power_and_size() {
    let labels: Vec<String> = (1..=80).map(|t| t.to_string()).collect();
    let shifted: Vec<f64> = (1..=80)
        .map(|t| t as f64 + if t >= 40 { 10.0 } else { 0.0 })
        .collect();
    let result = zivot_andrews(&shifted, &labels, 5, 0.15).unwrap();
    assert!(
        result.base.statistic < -5.57,
        "broken trend statistic {}",
        result.base.statistic
    );
    assert_eq!(result.decision_at["0.01"], Decision::Reject);

    for rep in 0..5u64 {
        let mut stream = RandomStream::new(1500, rep);
        let noisy: Vec<f64> = (1..=80)
            .map(|t| {
                t as f64
                    + if t >= 40 { 10.0 } else { 0.0 }
                    + 0.5 * standard_normal(&mut stream)
            })
            .collect();
        let noisy_result = zivot_andrews(&noisy, &labels, 5, 0.15).unwrap();
        assert_eq!(noisy_result.decision_at["0.01"], Decision::Reject, "rep {rep}");
    }

    let labels: Vec<String> = (1..=200).map(|t| t.to_string()).collect();
    let mut rejections = 0;
    for rep in 0..100u64 {
        let mut stream = RandomStream::new(777, rep);
        let mut level = 0.0;
        let walk: Vec<f64> = (0..200)
            .map(|_| {
                level += standard_normal(&mut stream);
                level
            })
            .collect();
        let walk_result = zivot_andrews(&walk, &labels, 5, 0.15).unwrap();
        if walk_result.decision_at["0.10"] == Decision::Reject {
            rejections += 1;
        }
    }
    assert!(rejections <= 15, "false rejections {rejections}/100");
    println!(
        "acceptance criterion 15: pass (power on broken trends; size {rejections}/100 on random walks)"
    );
}
