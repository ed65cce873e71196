use std::sync::OnceLock;

use itertools::Itertools;

use super::MAX_VERTICES;

/// Bit layout of the `k`-subsets of `{0..n-1}`. Colex order on subsets
/// coincides with numeric order on their vertex bitmasks, so slot `i` is the
/// `i`-th smallest vertex mask with `k` bits set.
pub(crate) struct Layout {
    pub subsets: Vec<u8>,
    /// Slot of each `k`-subset, indexed by vertex mask.
    pub slot: Vec<u8>,
    /// Edge-slot mask of every `k`-subset inside a vertex set.
    pub within: Vec<u128>,
}

/// Images of every slot under every vertex permutation of `{0..n-1}`.
pub(crate) struct PermTable {
    pub perms: Vec<Vec<u8>>,
    /// `slots` consecutive entries per permutation.
    pub maps: Vec<u8>,
    pub slots: usize,
}

impl PermTable {
    pub fn map(&self, index: usize) -> &[u8] {
        &self.maps[index * self.slots..(index + 1) * self.slots]
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }
}

const SIDE: usize = MAX_VERTICES + 1;

static LAYOUTS: [[OnceLock<Layout>; SIDE]; SIDE] = [const { [const { OnceLock::new() }; SIDE] }; SIDE];
static PERMS: [[OnceLock<PermTable>; SIDE]; SIDE] = [const { [const { OnceLock::new() }; SIDE] }; SIDE];

pub(crate) fn layout(n: usize, k: usize) -> &'static Layout {
    LAYOUTS[n][k].get_or_init(|| {
        let full = 1usize << n;
        let subsets: Vec<u8> = (0..full)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| s as u8)
            .collect();
        let mut slot = vec![u8::MAX; full];
        for (i, &s) in subsets.iter().enumerate() {
            slot[s as usize] = i as u8;
        }
        let within = (0..full)
            .map(|set| {
                subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s as usize & set == s as usize)
                    .fold(0u128, |acc, (i, _)| acc | (1u128 << i))
            })
            .collect();
        Layout {
            subsets,
            slot,
            within,
        }
    })
}

pub(crate) fn perm_table(n: usize, k: usize) -> &'static PermTable {
    PERMS[n][k].get_or_init(|| {
        let lay = layout(n, k);
        let perms: Vec<Vec<u8>> = (0..n as u8).permutations(n).collect();
        let slots = lay.subsets.len();
        let mut maps = Vec::with_capacity(perms.len() * slots);
        for p in &perms {
            for &s in &lay.subsets {
                maps.push(lay.slot[permute_vertex_mask(s, p) as usize]);
            }
        }
        PermTable { perms, maps, slots }
    })
}

#[inline]
pub(crate) fn permute_vertex_mask(set: u8, perm: &[u8]) -> u8 {
    let mut out = 0u8;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        out |= 1 << perm[v];
        rest &= rest - 1;
    }
    out
}

#[inline]
pub(crate) fn apply_slot_map(mask: u128, map: &[u8]) -> u128 {
    let mut out = 0u128;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out |= 1u128 << map[i];
        rest &= rest - 1;
    }
    out
}

/// Software parallel-bit-extract: packs the bits of `value` selected by
/// `select` into the low bits, preserving order.
#[inline]
pub(crate) fn extract_bits(value: u128, select: u128) -> u128 {
    let mut out = 0u128;
    let mut rest = select;
    let mut pos = 0;
    while rest != 0 {
        let i = rest.trailing_zeros();
        if value >> i & 1 == 1 {
            out |= 1u128 << pos;
        }
        pos += 1;
        rest &= rest - 1;
    }
    out
}
