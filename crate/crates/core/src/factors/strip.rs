//! Column-profile dynamic program counting path covers of `P_h □ P_n`.
//!
//! The grid is swept column by column. A profile records, for each row,
//! whether a path edge leaves the current column to the right and which
//! dangling ends belong to the same partial path. Within a column the
//! vertical edges and the rightward edges are chosen jointly; a vertex's
//! degree is then fixed, which decides whether it is a path end.

use std::collections::HashMap;

use super::EndpointConstraint;
use crate::constructions::{cartesian_product, path_graph};
use crate::error::{invalid, Error, Result};

pub const STRIP_HEIGHT_LIMIT: usize = 4;
pub const STRIP_WIDTH_LIMIT: usize = 12;

type Profile = [u8; STRIP_HEIGHT_LIMIT];

fn find(parent: &mut [u8], x: u8) -> u8 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut y = x;
    while parent[y as usize] != r {
        let next = parent[y as usize];
        parent[y as usize] = r;
        y = next;
    }
    r
}

/// Counts path covers of `P_height □ P_width` admitted by `c`, whose vertex
/// `(row, col)` (0-based) has index `row * width + col`.
pub fn count_strip_covers(height: usize, width: usize, c: &EndpointConstraint) -> Result<u64> {
    if height == 0 || height > STRIP_HEIGHT_LIMIT {
        return Err(invalid(format!("strip height must be in 1..={STRIP_HEIGHT_LIMIT}")));
    }
    if width == 0 || width > STRIP_WIDTH_LIMIT {
        return Err(Error::TooLarge {
            what: "strip width",
            size: width,
            limit: STRIP_WIDTH_LIMIT,
        });
    }
    let g = cartesian_product(&path_graph(height)?, &path_graph(width)?)?;
    c.validate(&g)?;
    Ok(c.expand_pairing()
        .iter()
        .map(|part| count_unpaired(height, width, part))
        .sum())
}

fn count_unpaired(h: usize, width: usize, c: &EndpointConstraint) -> u64 {
    let mut layer: HashMap<Profile, u64> = HashMap::from([([0u8; STRIP_HEIGHT_LIMIT], 1)]);
    for col in 0..width {
        let out_choices = if col + 1 == width { 1 } else { 1u32 << h };
        let mut next: HashMap<Profile, u64> = HashMap::new();
        for (profile, &ways) in &layer {
            for vertical in 0u32..(1 << (h - 1)) {
                for out in 0..out_choices {
                    if let Some(p) = transition(h, width, col, profile, vertical, out, c) {
                        *next.entry(p).or_insert(0) += ways;
                    }
                }
            }
        }
        layer = next;
    }
    layer.get(&[0u8; STRIP_HEIGHT_LIMIT]).copied().unwrap_or(0)
}

/// Applies one column. Union-find nodes `0..h` are incoming path labels
/// (label `l` at node `l - 1`), nodes `h..2h` the column's vertices.
fn transition(
    h: usize,
    width: usize,
    col: usize,
    incoming: &Profile,
    vertical: u32,
    out: u32,
    c: &EndpointConstraint,
) -> Option<Profile> {
    for r in 0..h {
        let up = r > 0 && vertical >> (r - 1) & 1 == 1;
        let down = r + 1 < h && vertical >> r & 1 == 1;
        let degree = (incoming[r] != 0) as u8 + up as u8 + down as u8 + (out >> r & 1) as u8;
        let v = r * width + col;
        match degree {
            1 if c.eligible(v) => {}
            2 if !c.is_required(v) => {}
            _ => return None,
        }
    }
    let mut parent = [0u8; 2 * STRIP_HEIGHT_LIMIT];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u8;
    }
    for r in 0..h {
        if incoming[r] != 0 {
            let a = find(&mut parent, (h + r) as u8);
            let b = find(&mut parent, incoming[r] - 1);
            parent[a as usize] = b;
        }
    }
    for r in 0..h - 1 {
        if vertical >> r & 1 == 1 {
            let a = find(&mut parent, (h + r) as u8);
            let b = find(&mut parent, (h + r + 1) as u8);
            if a == b {
                return None;
            }
            parent[a as usize] = b;
        }
    }
    let mut result = [0u8; STRIP_HEIGHT_LIMIT];
    let mut names: Vec<u8> = Vec::with_capacity(h);
    for r in 0..h {
        if out >> r & 1 == 1 {
            let root = find(&mut parent, (h + r) as u8);
            let label = match names.iter().position(|&x| x == root) {
                Some(k) => k,
                None => {
                    names.push(root);
                    names.len() - 1
                }
            };
            result[r] = label as u8 + 1;
        }
    }
    Some(result)
}
