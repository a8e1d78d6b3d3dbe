//! Independent oracles shared by the integration suites. These stay
//! deliberately naive: they must not share any computation path with the
//! library code they check.

use walkcert::graph::Graph;

/// Count walks by enumerating node sequences depth-first and filtering on
/// adjacency: every visited prefix of length `L+1` nodes is one walk of
/// length `L`. No vectors, no matrices.
pub fn brute_force_walk_counts(g: &Graph, max_len: usize) -> Vec<u64> {
    fn extend(g: &Graph, node: usize, depth: usize, max_len: usize, counts: &mut [u64]) {
        counts[depth] += 1;
        if depth == max_len {
            return;
        }
        for next in 0..g.node_count() {
            if g.has_edge(node, next) {
                extend(g, next, depth + 1, max_len, counts);
            }
        }
    }
    let mut counts = vec![0u64; max_len + 1];
    for start in 0..g.node_count() {
        extend(g, start, 0, max_len, &mut counts);
    }
    counts
}

/// A second graph6 reader, written differently from the library codec:
/// expand every data byte into a bit vector first, then assign bits to
/// node pairs from an explicitly materialized pair list.
#[allow(dead_code)] // each test binary compiles its own copy of this module
pub fn reference_graph6_decode(text: &str) -> Result<(usize, Vec<(usize, usize)>), String> {
    let bytes = text.trim().as_bytes();
    if bytes.is_empty() {
        return Err("empty".into());
    }
    let n = match bytes[0] {
        b @ 63..=125 => (b - 63) as usize,
        _ => return Err("unsupported size byte".into()),
    };
    let mut bits = Vec::new();
    for &b in &bytes[1..] {
        if !(63..=126).contains(&b) {
            return Err(format!("bad byte {b}"));
        }
        let v = b - 63;
        for shift in (0..6).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    let mut pairs = Vec::new();
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    if bits.len() < pairs.len() {
        return Err("too few data bits".into());
    }
    let edges = pairs
        .into_iter()
        .zip(&bits)
        .filter(|(_, &bit)| bit)
        .map(|(pair, _)| pair)
        .collect();
    Ok((n, edges))
}
