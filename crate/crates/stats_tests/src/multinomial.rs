//! Monte Carlo multinomial goodness-of-fit test for title counts.
//!
//! The null asks whether observed title counts are consistent with every
//! finalist's chances being proportional to nothing but its appearance
//! count: each team's expected titles are `appearances / 4`. The observed
//! discrepancy is measured with the likelihood-ratio statistic
//! `G^2 = 2 sum O_t ln(O_t / E_t)` over title-winning teams, and its null
//! distribution is simulated by redrawing every title independently with
//! team probabilities proportional to appearances. Simulated histories
//! with `G^2` at or above the observed value drive the p estimate.

use rayon::prelude::*;

use crate::{check, Method, Result, StatsError, TestResult};
use numerics::RandomStream;

/// One final four: the four participants and which of them won.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinalFourObservation {
    /// Team identifiers; the caller assigns dense ids however it likes.
    pub participants: [u32; 4],
    /// Winning team; must be one of the participants.
    pub winner: u32,
}

/// Monte Carlo goodness-of-fit test on final-four title counts.
///
/// Deterministic for a fixed `(seed, iterations)` pair: iteration `i`
/// draws from its own random substream, so splitting the loop across
/// threads cannot change the estimate.
pub fn multinomial_mc_gof(
    final_fours: &[FinalFourObservation],
    iterations: u64,
    seed: u64,
) -> Result<TestResult> {
    check(!final_fours.is_empty(), "no final fours supplied")?;
    check(
        iterations >= 1000,
        format!("Monte Carlo needs at least 1000 iterations, got {iterations}"),
    )?;
    for (i, ff) in final_fours.iter().enumerate() {
        for a in 0..4 {
            for b in (a + 1)..4 {
                if ff.participants[a] == ff.participants[b] {
                    return Err(StatsError::InvalidInput(format!(
                        "final four {i} lists team {} twice",
                        ff.participants[a]
                    )));
                }
            }
        }
        if !ff.participants.contains(&ff.winner) {
            return Err(StatsError::InvalidInput(format!(
                "final four {i} winner {} is not among its participants",
                ff.winner
            )));
        }
    }

    // Dense reindexing of whatever ids the caller used.
    let mut ids: Vec<u32> = final_fours
        .iter()
        .flat_map(|ff| ff.participants.iter().copied())
        .collect();
    ids.sort_unstable();
    ids.dedup();
    let index_of = |id: u32| ids.binary_search(&id).unwrap();

    let teams = ids.len();
    let n_ff = final_fours.len();
    let mut appearances = vec![0u64; teams];
    let mut titles = vec![0u64; teams];
    for ff in final_fours {
        for p in ff.participants {
            appearances[index_of(p)] += 1;
        }
        titles[index_of(ff.winner)] += 1;
    }

    let expected: Vec<f64> = appearances.iter().map(|&a| a as f64 / 4.0).collect();
    let g_squared = |counts: &[u64]| -> f64 {
        counts
            .iter()
            .zip(&expected)
            .filter(|(&o, _)| o > 0)
            .map(|(&o, &e)| {
                let o = o as f64;
                2.0 * o * (o / e).ln()
            })
            .sum()
    };
    let observed = g_squared(&titles);

    // Cumulative winner distribution: each of the 4 * n_ff appearance
    // slots is equally likely to produce the title.
    let total_slots = 4.0 * n_ff as f64;
    let mut cumulative = Vec::with_capacity(teams);
    let mut acc = 0.0;
    for &a in &appearances {
        acc += a as f64 / total_slots;
        cumulative.push(acc);
    }
    if let Some(last) = cumulative.last_mut() {
        *last = 1.0;
    }

    let hits: u64 = (0..iterations)
        .into_par_iter()
        .map_init(
            || vec![0u64; teams],
            |counts, i| {
                counts.iter_mut().for_each(|c| *c = 0);
                let mut stream = RandomStream::new(seed, i + 1);
                for _ in 0..n_ff {
                    let u = stream.next_uniform();
                    let t = cumulative.partition_point(|&c| c <= u).min(teams - 1);
                    counts[t] += 1;
                }
                u64::from(g_squared(counts) >= observed - 1e-9)
            },
        )
        .sum();

    let p_hat = hits as f64 / iterations as f64;
    let mc_se = (p_hat * (1.0 - p_hat) / iterations as f64).sqrt();

    Ok(TestResult::new(observed, p_hat, Method::MonteCarlo)
        .with_count("final_fours", n_ff as u64)
        .with_count("teams", teams as u64)
        .with_count("iterations", iterations)
        .with_extra("mc_standard_error", mc_se))
}
