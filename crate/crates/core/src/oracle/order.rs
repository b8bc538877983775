use thiserror::Error;

/// Why an order is not a strict modular order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element {element} outside domain of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("order is reflexive at {0}")]
    Reflexive(usize),
    #[error("order is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(usize, usize, usize),
    #[error("incomparability is not transitive: {0} ~ {1} ~ {2} but {0} and {2} are comparable")]
    NotModular(usize, usize, usize),
}

/// Converts a strict modular order on `0..n` (pairs `(x, y)` meaning
/// `x ≺ y`) into its height map by repeatedly stripping minimal elements.
pub fn heights_from_order(n: usize, order: &[(usize, usize)]) -> Result<Vec<usize>, OrderError> {
    let mut lt = vec![vec![false; n]; n];
    for &(x, y) in order {
        for e in [x, y] {
            if e >= n {
                return Err(OrderError::OutOfRange { element: e, size: n });
            }
        }
        if x == y {
            return Err(OrderError::Reflexive(x));
        }
        lt[x][y] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if !lt[x][y] {
                continue;
            }
            for (z, &yz) in lt[y].iter().enumerate() {
                if yz && !lt[x][z] {
                    return Err(OrderError::NotTransitive(x, y, z));
                }
            }
        }
    }
    let inc = |a: usize, b: usize| !lt[a][b] && !lt[b][a];
    for x in 0..n {
        for y in 0..n {
            if x == y || !inc(x, y) {
                continue;
            }
            for z in 0..n {
                if z != x && z != y && inc(y, z) && !inc(x, z) {
                    return Err(OrderError::NotModular(x, y, z));
                }
            }
        }
    }

    let mut heights = vec![usize::MAX; n];
    let mut left = n;
    let mut level = 0;
    while left > 0 {
        let minima: Vec<usize> = (0..n)
            .filter(|&y| heights[y] == usize::MAX)
            .filter(|&y| (0..n).all(|x| heights[x] != usize::MAX || !lt[x][y]))
            .collect();
        for &y in &minima {
            heights[y] = level;
        }
        left -= minima.len();
        level += 1;
    }
    Ok(heights)
}

/// The order induced by a height map.
pub fn order_from_heights(heights: &[usize]) -> Vec<(usize, usize)> {
    let n = heights.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if heights[x] < heights[y] {
                out.push((x, y));
            }
        }
    }
    out
}
