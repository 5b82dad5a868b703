use super::{Algorithm, Permutation, SortWord};

/// Swaps executed by a sorting algorithm on `p`, in execution order.
pub fn trace(algo: Algorithm, p: &Permutation) -> SortWord {
    let mut l = p.images().to_vec();
    let mut w = Vec::new();
    match algo {
        Algorithm::Bubble => {
            for pass in bubble_passes(p) {
                w.extend_from_slice(pass.indices());
            }
        }
        Algorithm::Insertion => {
            // each inserted element sinks left: t_j t_{j-1} … t_i
            for j in 1..l.len() {
                let mut i = j;
                while i > 0 && l[i - 1] > l[i] {
                    l.swap(i - 1, i);
                    w.push(i);
                    i -= 1;
                }
            }
        }
        Algorithm::Selection => {
            // the minimum of the unsorted tail is carried left: t_m … t_{j+1}
            for j in 0..l.len() {
                let m = (j..l.len()).min_by_key(|&q| l[q]).unwrap();
                for q in (j + 1..=m).rev() {
                    l.swap(q - 1, q);
                    w.push(q);
                }
            }
        }
    }
    SortWord::from_vec(w)
}

/// Bubble sort passes from the list start, stopping after a pass without swaps.
pub fn bubble_passes(p: &Permutation) -> Vec<SortWord> {
    let mut l = p.images().to_vec();
    let mut passes = Vec::new();
    loop {
        let mut pass = Vec::new();
        for i in 0..l.len().saturating_sub(1) {
            if l[i] > l[i + 1] {
                l.swap(i, i + 1);
                pass.push(i + 1);
            }
        }
        if pass.is_empty() {
            return passes;
        }
        passes.push(SortWord::from_vec(pass));
    }
}
