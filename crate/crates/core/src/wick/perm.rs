/// Calls `visit` with every permutation of `0..n` that maps each class
/// (a contiguous index range) onto itself.
pub(crate) fn for_each_class_permutation(classes: &[std::ops::Range<usize>], n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    recurse(classes, &mut perm, &mut visit);
}

fn recurse(classes: &[std::ops::Range<usize>], perm: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    match classes.split_first() {
        None => visit(perm),
        Some((first, rest)) => {
            let range = first.clone();
            permute_range(perm, range.start, range.end, &mut |p| recurse(rest, p, visit));
        }
    }
}

/// All orderings of `perm[start..end]`, restoring the slice afterwards.
fn permute_range(perm: &mut Vec<usize>, start: usize, end: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if end - start <= 1 {
        visit(perm);
        return;
    }
    for i in start..end {
        perm.swap(start, i);
        permute_range(perm, start + 1, end, visit);
        perm.swap(start, i);
    }
}

/// Maximal runs of equal values in a sorted slice.
pub(crate) fn equal_runs(sorted: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] != sorted[start] {
            if i > start {
                runs.push(start..i);
            }
            start = i;
        }
    }
    runs
}

pub(crate) fn class_group_order(classes: &[std::ops::Range<usize>]) -> u64 {
    classes.iter().map(|r| factorial_u64(r.len())).product()
}

pub(crate) fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}
