use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;

pub(super) fn validate(degree: usize, images: &[usize]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidPermutation(format!("expected {degree} images, got {}", images.len())));
    }
    let mut seen = alloc::vec![false; degree];
    for &x in images {
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!("image {x} out of range or repeated")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Image list on `0..degree` of a product of disjoint cycles on 1-based points.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = alloc::vec![false; degree];
    for cyc in cycles {
        for &pt in cyc {
            if pt == 0 || pt > degree {
                return Err(Error::InvalidPermutation(format!("point {pt} outside 1..={degree}")));
            }
            if used[pt - 1] {
                return Err(Error::InvalidPermutation(format!("point {pt} appears twice")));
            }
            used[pt - 1] = true;
        }
        for (i, &pt) in cyc.iter().enumerate() {
            images[pt - 1] = cyc[(i + 1) % cyc.len()] - 1;
        }
    }
    Ok(images)
}

pub(super) fn cycles(images: &[u16]) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x + 1);
            x = images[x] as usize;
        }
        out.push(cyc);
    }
    out
}
