//! Shared rank machinery: average ranks and tie bookkeeping.

/// Average ranks (1-based) of `values`, plus the sizes of every tie group.
/// Group sizes of 1 are included; callers that only care about real ties
/// filter on `size > 1`.
pub(crate) fn average_ranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());

    let mut ranks = vec![0.0; n];
    let mut tie_sizes = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0; // mean of 1-based ranks i+1..=j+1
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        tie_sizes.push(j - i + 1);
        i = j + 1;
    }
    (ranks, tie_sizes)
}

/// Sum of t^3 - t over tie groups; zero when everything is distinct.
pub(crate) fn tie_term(tie_sizes: &[usize]) -> f64 {
    tie_sizes
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum()
}

/// True when at least one tie group has more than one member.
pub(crate) fn has_ties(tie_sizes: &[usize]) -> bool {
    tie_sizes.iter().any(|&t| t > 1)
}
