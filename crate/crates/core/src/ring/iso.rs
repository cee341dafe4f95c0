use super::FiniteRing;

/// Smallest subring containing `seed` (and 0, 1).
fn generated_subring(r: &FiniteRing, seed: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; r.order()];
    let mut list = vec![0, r.one()];
    list.extend_from_slice(seed);
    list.sort_unstable();
    list.dedup();
    for &x in &list {
        inside[x] = true;
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            for z in [r.add(x, y), r.mul(x, y)] {
                if !inside[z] {
                    inside[z] = true;
                    list.push(z);
                }
            }
        }
        i += 1;
    }
    inside
}

/// Extends a partial map along `+` and `·` until it is closed; `None` on
/// a conflict.
fn propagate(a: &FiniteRing, b: &FiniteRing, map: &mut [Option<usize>]) -> Option<()> {
    let mut known: Vec<usize> = (0..a.order()).filter(|&x| map[x].is_some()).collect();
    let mut i = 0;
    while i < known.len() {
        let x = known[i];
        for j in 0..=i {
            let y = known[j];
            let (fx, fy) = (map[x]?, map[y]?);
            for (z, fz) in [(a.add(x, y), b.add(fx, fy)), (a.mul(x, y), b.mul(fx, fy))] {
                match map[z] {
                    Some(v) if v != fz => return None,
                    Some(_) => {}
                    None => {
                        map[z] = Some(fz);
                        known.push(z);
                    }
                }
            }
        }
        i += 1;
    }
    Some(())
}

fn search(
    a: &FiniteRing,
    b: &FiniteRing,
    gens: &[usize],
    map: Vec<Option<usize>>,
) -> Option<Vec<usize>> {
    let Some((&g, rest)) = gens.split_first() else {
        let full: Vec<usize> = map.iter().map(|m| m.expect("closed map")).collect();
        let mut hit = vec![false; b.order()];
        for &y in &full {
            if std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        return Some(full);
    };
    if map[g].is_some() {
        return search(a, b, rest, map);
    }
    let order = a.additive_order(g);
    for candidate in b.elements() {
        if b.additive_order(candidate) != order || b.is_unit(candidate) != a.is_unit(g) {
            continue;
        }
        let mut trial = map.clone();
        trial[g] = Some(candidate);
        if propagate(a, b, &mut trial).is_some() {
            if let Some(found) = search(a, b, rest, trial) {
                return Some(found);
            }
        }
    }
    None
}

/// Backtracking search for a ring isomorphism `a → b` over a greedy set
/// of ring generators. Intended for small rings (order ≤ 16 or so).
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<usize>> {
    if a.order() != b.order()
        || a.idempotents().len() != b.idempotents().len()
        || a.characteristic() != b.characteristic()
    {
        return None;
    }
    let mut gens = Vec::new();
    let mut covered = generated_subring(a, &gens);
    while let Some(x) = (0..a.order()).find(|&x| !covered[x]) {
        gens.push(x);
        covered = generated_subring(a, &gens);
    }
    let mut map = vec![None; a.order()];
    map[0] = Some(0);
    map[a.one()] = Some(b.one());
    propagate(a, b, &mut map)?;
    search(a, b, &gens, map)
}

pub fn are_isomorphic(a: &FiniteRing, b: &FiniteRing) -> bool {
    find_isomorphism(a, b).is_some()
}
