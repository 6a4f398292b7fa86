//! Integer grids `{lo..=hi}^n` used by the verification suites.

/// Every point of `{lo..=hi}^n` in lexicographic order.
pub fn cube(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut point = vec![lo; n];
    loop {
        out.push(point.clone());
        let mut idx = n;
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if point[idx] < hi {
                point[idx] += 1;
                for p in point.iter_mut().skip(idx + 1) {
                    *p = lo;
                }
                break;
            }
        }
    }
}

/// Points of the cube that are weakly increasing.
pub fn weakly_increasing(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    cube(n, lo, hi).into_iter().filter(|p| p.windows(2).all(|w| w[0] <= w[1])).collect()
}

/// Parses a range of the form `a..b` (inclusive), e.g. `-2..2`.
pub fn parse_range(s: &str) -> Option<(i64, i64)> {
    let (a, b) = s.split_once("..")?;
    let lo = a.trim().parse().ok()?;
    let hi = b.trim().trim_start_matches('=').parse().ok()?;
    Some((lo, hi))
}
