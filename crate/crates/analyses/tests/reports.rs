//! End-to-end checks of the six report pipelines on the bundled data.

use std::path::{Path, PathBuf};

use approx::assert_abs_diff_eq;
use dataset::{load_dataset, Dataset, Era, PeriodScheme};
use analyses::{
    analyze_champion_dominance, analyze_dominance, analyze_final_four_randomness, analyze_pace,
    analyze_pluralism, analyze_scorer_correlation, AnalysisReport, Cell,
};
use stats_tests::Decision;

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

fn cell_text(cell: &Cell) -> &str {
    match cell {
        Cell::Text(t) => t,
        _ => panic!("expected text"),
    }
}

fn row<'a>(report: &'a AnalysisReport, table: &str, label: &str) -> &'a [Cell] {
    let table = report.table(table).expect("table exists");
    &table
        .rows
        .iter()
        .find(|r| r.label == label)
        .unwrap_or_else(|| panic!("row '{label}' missing"))
        .cells
}

#[test]
fn dominance_reproduces_the_friedman_pair() {
    let report = analyze_dominance(&bundled(), &PeriodScheme::default_history()).unwrap();

    let titles = report.standard_test("friedman_titles").unwrap();
    assert_abs_diff_eq!(titles.statistic, 0.7627, epsilon = 1e-4);
    assert_abs_diff_eq!(titles.p_value, 0.8584, epsilon = 1e-4);

    let appearances = report.standard_test("friedman_appearances").unwrap();
    assert_abs_diff_eq!(appearances.statistic, 6.5789, epsilon = 1e-4);
    assert_abs_diff_eq!(appearances.p_value, 0.0866, epsilon = 1e-4);

    let israel = row(&report, "titles_and_appearances_by_country", "Israel");
    let values: Vec<f64> = israel.iter().map(cell_real).collect();
    assert_eq!(values, vec![6.0, 9.0, 20.0, 1.0]);

    assert_eq!(report.table("titles_by_region").unwrap().rows.len(), 6);
    assert_eq!(report.series.len(), 8);
    assert!(report.series("titles_spain").is_some());
}

#[test]
fn champion_dominance_reproduces_the_period_table() {
    let report =
        analyze_champion_dominance(&bundled(), &PeriodScheme::default_history()).unwrap();

    let seventies = row(&report, "scoring_by_period", "1971-1980");
    assert_abs_diff_eq!(cell_real(&seventies[0]), 91.20, epsilon = 0.05);
    assert_abs_diff_eq!(cell_real(&seventies[1]), 77.88, epsilon = 0.05);
    assert_abs_diff_eq!(cell_real(&seventies[2]), 84.54, epsilon = 0.05);

    let table = report.table("scoring_by_period").unwrap();
    assert_eq!(table.rows.len(), 6);
    for row in &table.rows {
        let champion = cell_real(&row.cells[0]);
        let opponent = cell_real(&row.cells[1]);
        let per_team = cell_real(&row.cells[2]);
        assert_eq!(per_team, (champion + opponent) / 2.0, "{}", row.label);
    }

    let flags = report.table("high_dominance_seasons").unwrap();
    assert_eq!(flags.rows.len(), 6);
    let extreme: Vec<&str> = flags
        .rows
        .iter()
        .filter(|r| cell_real(&r.cells[1]) == 1.0)
        .map(|r| r.label.as_str())
        .collect();
    assert_eq!(extreme, vec!["1977-78"]);

    let eighties = report
        .series("period_difference_pct")
        .unwrap()
        .points
        .iter()
        .find(|p| p.label == "1981-1990")
        .unwrap()
        .value;
    assert_abs_diff_eq!(eighties, 8.0, epsilon = 0.5);

    assert_eq!(report.series("champion_ppg").unwrap().points.len(), 62);
    assert!(report.tests.is_empty());
}

#[test]
fn pluralism_reproduces_the_paired_tests_and_the_break() {
    let report = analyze_pluralism(&bundled(), None, None).unwrap();

    let full = report.standard_test("wilcoxon_full").unwrap();
    assert_eq!(full.statistic, 824.0);
    assert_abs_diff_eq!(full.p_value, 0.149536, epsilon = 1e-4);
    assert_eq!(full.n_summary["pairs_used"], 64);

    let runs_full = report.standard_test("runs_full").unwrap();
    assert_eq!(runs_full.statistic, 0.0);
    assert_eq!(runs_full.p_value, 1.0);
    assert_eq!(runs_full.n_summary["runs"], 31);

    let za = report.break_test("zivot_andrews").unwrap();
    assert_abs_diff_eq!(za.base.statistic, -4.347550407, epsilon = 1e-6);
    assert_eq!(za.break_position, 41);
    assert_eq!(za.break_label, "1997-98");
    assert_eq!(za.p_bracket, "> 0.10");
    assert_eq!(za.decision_at["0.10"], Decision::FailToReject);

    let modern = report.standard_test("wilcoxon_modern").unwrap();
    assert_eq!(modern.statistic, 42.5);
    assert_abs_diff_eq!(modern.p_value, 0.020622, epsilon = 1e-4);
    assert_eq!(modern.n_summary["pairs_supplied"], 20);

    let runs_modern = report.standard_test("runs_modern").unwrap();
    assert_abs_diff_eq!(runs_modern.statistic, 1.560736, epsilon = 1e-5);
    assert_abs_diff_eq!(runs_modern.p_value, 0.118586, epsilon = 1e-5);

    assert_eq!(report.series("champion_share").unwrap().points.len(), 62);
    assert_eq!(report.series("share_difference").unwrap().points.len(), 61);
    assert_eq!(report.series("pooled_share_ma10").unwrap().points.len(), 52);
    assert_eq!(
        report.series("share_difference_ma10").unwrap().points.len(),
        52
    );
}

#[test]
fn pluralism_modern_subset_is_the_filtered_full_series() {
    let ds = bundled();
    let report = analyze_pluralism(&ds, Some(1998), None).unwrap();
    let modern = report.standard_test("wilcoxon_modern").unwrap();

    let pairs = dataset::scorer_share_pairs(&ds);
    let filtered: Vec<f64> = pairs
        .iter()
        .filter(|p| p.season.ordinal > 1998 && p.season.fork != dataset::Fork::FibaBranch)
        .map(|p| p.difference)
        .collect();
    assert_eq!(modern.n_summary["pairs_supplied"], filtered.len() as u64);

    let zeros = vec![0.0; filtered.len()];
    let recomputed = stats_tests::wilcoxon_signed_rank(&filtered, &zeros, false).unwrap();
    assert_eq!(recomputed.statistic, modern.statistic);
    assert_eq!(recomputed.p_value, modern.p_value);
}

#[test]
fn pace_reproduces_the_group_comparison() {
    let report = analyze_pace(&bundled(), 0.44, None, None).unwrap();

    let before = row(&report, "possession_groups", "before_break");
    assert_eq!(cell_real(&before[0]), 16.0);
    assert_abs_diff_eq!(cell_real(&before[1]), 66.25, epsilon = 0.005);
    let after = row(&report, "possession_groups", "after_break");
    assert_eq!(cell_real(&after[0]), 21.0);
    assert_abs_diff_eq!(cell_real(&after[1]), 71.33, epsilon = 0.005);

    let mw = report.standard_test("mann_whitney").unwrap();
    assert_eq!(mw.statistic, 84.0);
    assert_abs_diff_eq!(mw.p_value, 0.010467, epsilon = 1e-4);
    assert_abs_diff_eq!(mw.extras["z"], -2.560008, epsilon = 1e-5);

    let sensitivity = report.table("lambda_sensitivity").unwrap();
    assert_eq!(sensitivity.rows.len(), 3);
    let befores: Vec<f64> = sensitivity
        .rows
        .iter()
        .map(|r| cell_real(&r.cells[0]))
        .collect();
    assert!(befores[0] < befores[1] && befores[1] < befores[2]);

    assert_eq!(report.series("possessions").unwrap().points.len(), 37);
    assert_eq!(report.series("possessions_ma5").unwrap().points.len(), 32);
    assert!(report.notes.iter().any(|n| n.contains("27")));
}

#[test]
fn pace_rejects_a_bad_weight() {
    assert!(analyze_pace(&bundled(), 1.5, None, None).is_err());
    assert!(analyze_pace(&bundled(), f64::NAN, None, None).is_err());
}

#[test]
fn scorer_correlation_reproduces_both_tests() {
    let report = analyze_scorer_correlation(&bundled()).unwrap();

    let pearson = report.standard_test("pearson").unwrap();
    assert_abs_diff_eq!(pearson.extras["r"], -0.400259, epsilon = 1e-5);
    assert_abs_diff_eq!(pearson.statistic, -2.227109, epsilon = 1e-5);
    assert_abs_diff_eq!(pearson.p_value, 0.034811, epsilon = 1e-5);

    let spearman = report.standard_test("spearman").unwrap();
    assert_abs_diff_eq!(spearman.extras["rho"], -0.392455, epsilon = 1e-5);
    assert_abs_diff_eq!(spearman.statistic, 5088.0319, epsilon = 0.01);
    assert_abs_diff_eq!(spearman.p_value, 0.038856, epsilon = 1e-5);

    let table = report.table("top_scorers").unwrap();
    assert_eq!(table.rows.len(), 28);
    let vujanic = row(&report, "top_scorers", "2002-03");
    assert_eq!(cell_text(&vujanic[0]), "Miloš Vujanić");
    assert_abs_diff_eq!(cell_real(&vujanic[2]), 25.8, epsilon = 1e-9);
    assert_eq!(cell_real(&vujanic[4]), 1.0);
}

#[test]
fn randomness_flags_the_documented_outliers() {
    let report =
        analyze_final_four_randomness(&bundled(), Era::Full, 2000, 7).unwrap();
    let table = report.table("expected_and_observed_titles").unwrap();
    assert_eq!(table.rows.len(), 50);

    let expected_p: &[(&str, f64)] = &[
        ("Cibona", 0.0625),
        ("Split", 0.05078125),
        ("ASK Riga", 0.05078125),
        ("Panathinaikos", 0.08607858),
    ];
    for &(team, p) in expected_p {
        let cells = row(&report, "expected_and_observed_titles", team);
        assert_abs_diff_eq!(cell_real(&cells[4]), p, epsilon = 1e-6);
        assert_eq!(cell_real(&cells[5]), 1.0, "{team} should be flagged");
    }
    let flagged = table
        .rows
        .iter()
        .filter(|r| cell_real(&r.cells[5]) == 1.0)
        .count();
    assert_eq!(flagged, 4);

    let real = row(&report, "expected_and_observed_titles", "Real Madrid");
    assert_eq!(cell_real(&real[0]), 32.0);
    assert_eq!(cell_real(&real[1]), 8.0);
    assert_eq!(cell_real(&real[2]), 10.0);
    assert_eq!(cell_real(&real[3]), 2.0);
    let cska = row(&report, "expected_and_observed_titles", "CSKA Moscow");
    assert_eq!(cell_real(&cska[1]), 7.25);
    assert_eq!(cell_real(&cska[3]), -0.25);
    let maccabi = row(&report, "expected_and_observed_titles", "Maccabi Tel Aviv");
    assert_eq!(cell_real(&maccabi[0]), 20.0);
    assert_eq!(cell_real(&maccabi[1]), 5.0);

    let observed: f64 = table.rows.iter().map(|r| cell_real(&r.cells[2])).sum();
    let expected: f64 = table.rows.iter().map(|r| cell_real(&r.cells[1])).sum();
    assert_eq!(observed, 62.0);
    assert_eq!(expected, 62.0);
}

#[test]
fn randomness_modern_era_matches_the_panathinaikos_case() {
    let report =
        analyze_final_four_randomness(&bundled(), Era::Modern, 2000, 7).unwrap();
    let cells = row(&report, "expected_and_observed_titles", "Panathinaikos");
    assert_eq!(cell_real(&cells[0]), 8.0);
    assert_eq!(cell_real(&cells[2]), 5.0);
    assert_abs_diff_eq!(cell_real(&cells[4]), 0.02729797, epsilon = 1e-6);

    let mc = report.standard_test("multinomial").unwrap();
    assert_eq!(mc.n_summary["final_fours"], 21);

    let table = report.table("expected_and_observed_titles").unwrap();
    let observed: f64 = table.rows.iter().map(|r| cell_real(&r.cells[2])).sum();
    assert_eq!(observed, 21.0);
}

#[test]
fn randomness_is_deterministic_in_the_seed() {
    let ds = bundled();
    let a = analyze_final_four_randomness(&ds, Era::Modern, 5000, 11).unwrap();
    let b = analyze_final_four_randomness(&ds, Era::Modern, 5000, 11).unwrap();
    let pa = a.standard_test("multinomial").unwrap().p_value;
    let pb = b.standard_test("multinomial").unwrap().p_value;
    assert_eq!(pa, pb);
}
