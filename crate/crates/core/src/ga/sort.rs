//! Pareto dominance, fast non-dominated sorting and the two survivor
//! selection schemes (crowding distance, reference-point niching). All
//! objectives are maximized.

use std::cmp::Ordering;

use rand::Rng;

use crate::scalar::Real;

/// `a` dominates `b`: no worse in every objective and better in at least one.
pub fn dominates<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Less) | None => return false,
            Some(Ordering::Greater) => strictly = true,
            Some(Ordering::Equal) => {}
        }
    }
    strictly
}

/// `a` is at least as good as `b` in every objective.
pub fn weakly_dominates<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Fronts `F1, F2, ...` as index lists, each sorted ascending.
pub fn non_dominated_sort<T: PartialOrd, P: AsRef<[T]>>(points: &[P]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (points[i].as_ref(), points[j].as_ref());
            if dominates(a, b) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates(b, a) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Rank (front index) of every point.
pub fn ranks(fronts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut rank = vec![usize::MAX; n];
    for (r, front) in fronts.iter().enumerate() {
        for &i in front {
            rank[i] = r;
        }
    }
    rank
}

/// Crowding distance of each member of `front` (same order as `front`).
/// Boundary points get infinity.
pub fn crowding_distance<T: Real, P: AsRef<[T]>>(points: &[P], front: &[usize]) -> Vec<T> {
    let m = front.len();
    let mut dist = vec![T::zero(); m];
    if m <= 2 {
        return vec![T::infinity(); m];
    }
    let objectives = points[front[0]].as_ref().len();
    for obj in 0..objectives {
        let value = |slot: usize| points[front[slot]].as_ref()[obj];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| value(a).partial_cmp(&value(b)).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
        let (lo, hi) = (value(order[0]), value(order[m - 1]));
        dist[order[0]] = T::infinity();
        dist[order[m - 1]] = T::infinity();
        let span = hi - lo;
        if span <= T::zero() {
            continue;
        }
        for w in 1..m - 1 {
            let gap = (value(order[w + 1]) - value(order[w - 1])) / span;
            dist[order[w]] = dist[order[w]] + gap;
        }
    }
    dist
}

/// Survivor selection flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    #[default]
    Crowding,
    ReferencePoint,
}

/// Picks `count` survivors: whole fronts in rank order, then the last
/// partially fitting front is thinned by crowding distance or by
/// reference-direction niching.
pub fn select_survivors<T: Real, R: Rng + ?Sized>(
    points: &[[T; 2]],
    count: usize,
    mode: SelectionMode,
    rng: &mut R,
) -> Vec<usize> {
    let fronts = non_dominated_sort(points);
    let mut chosen = Vec::with_capacity(count);
    for front in &fronts {
        if chosen.len() + front.len() <= count {
            chosen.extend_from_slice(front);
            continue;
        }
        let remaining = count - chosen.len();
        match mode {
            SelectionMode::Crowding => {
                let d = crowding_distance(points, front);
                let mut order: Vec<usize> = (0..front.len()).collect();
                order.sort_by(|&a, &b| d[b].partial_cmp(&d[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
                chosen.extend(order.into_iter().take(remaining).map(|slot| front[slot]));
            }
            SelectionMode::ReferencePoint => {
                let picked = niche_select(points, &chosen, front, remaining, count, rng);
                chosen.extend(picked);
            }
        }
        break;
    }
    chosen
}

/// Reference-direction niching for two objectives.
fn niche_select<T: Real, R: Rng + ?Sized>(
    points: &[[T; 2]],
    already: &[usize],
    last: &[usize],
    remaining: usize,
    population: usize,
    rng: &mut R,
) -> Vec<usize> {
    let pool: Vec<usize> = already.iter().chain(last).copied().collect();
    let mut ideal = [T::neg_infinity(); 2];
    let mut nadir = [T::infinity(); 2];
    for &i in &pool {
        for o in 0..2 {
            ideal[o] = ideal[o].max(points[i][o]);
            nadir[o] = nadir[o].min(points[i][o]);
        }
    }
    // Normalized minimization coordinates in [0, 1].
    let normalize = |i: usize| -> [T; 2] {
        let mut z = [T::zero(); 2];
        for o in 0..2 {
            let span = ideal[o] - nadir[o];
            z[o] = if span > T::zero() { (ideal[o] - points[i][o]) / span } else { T::zero() };
        }
        z
    };
    let divisions = (population / 2).max(1);
    let directions: Vec<[T; 2]> = (0..=divisions)
        .map(|j| {
            let w = T::from_count(j) / T::from_count(divisions);
            [w, T::one() - w]
        })
        .collect();
    let associate = |i: usize| -> (usize, T) {
        let z = normalize(i);
        directions
            .iter()
            .enumerate()
            .map(|(d, w)| {
                let norm2 = w[0] * w[0] + w[1] * w[1];
                let proj = (z[0] * w[0] + z[1] * w[1]) / norm2;
                let (dx, dy) = (z[0] - proj * w[0], z[1] - proj * w[1]);
                (d, (dx * dx + dy * dy).sqrt())
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
            .unwrap()
    };

    let mut niche = vec![0usize; directions.len()];
    for &i in already {
        niche[associate(i).0] += 1;
    }
    let mut candidates: Vec<(usize, usize, T)> = last.iter().map(|&i| {
        let (d, dist) = associate(i);
        (i, d, dist)
    }).collect();
    let mut excluded = vec![false; directions.len()];
    let mut picked = Vec::with_capacity(remaining);
    while picked.len() < remaining {
        let min_count = (0..directions.len()).filter(|&d| !excluded[d]).map(|d| niche[d]).min().expect("a direction with members remains");
        let lowest: Vec<usize> = (0..directions.len()).filter(|&d| !excluded[d] && niche[d] == min_count).collect();
        let d = lowest[rng.gen_range(0..lowest.len())];
        let members: Vec<usize> = (0..candidates.len()).filter(|&c| candidates[c].1 == d).collect();
        if members.is_empty() {
            excluded[d] = true;
            continue;
        }
        let slot = if niche[d] == 0 {
            *members
                .iter()
                .min_by(|&&a, &&b| candidates[a].2.partial_cmp(&candidates[b].2).unwrap_or(Ordering::Equal))
                .unwrap()
        } else {
            members[rng.gen_range(0..members.len())]
        };
        picked.push(candidates.swap_remove(slot).0);
        niche[d] += 1;
    }
    picked
}

/// Area dominated by a two-objective point set relative to the origin.
pub fn hypervolume<T: Real>(points: &[[T; 2]]) -> T {
    let mut pts: Vec<[T; 2]> = points.iter().copied().filter(|p| p[0] > T::zero() && p[1] > T::zero()).collect();
    pts.sort_by(|a, b| b[0].partial_cmp(&a[0]).unwrap_or(Ordering::Equal));
    let mut area = T::zero();
    let mut best_y = T::zero();
    for p in pts {
        if p[1] > best_y {
            area = area + p[0] * (p[1] - best_y);
            best_y = p[1];
        }
    }
    area
}
