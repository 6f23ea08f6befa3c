//! Packed exponent keys.
//!
//! A monomial in `n` variables of total degree at most `D` is packed into one
//! integer with `bits = bit_length(D)` bits per coordinate, coordinate 0 in
//! the most significant field. Numeric order on keys is then lexicographic
//! order on exponent vectors, and multiplying by a monomial is adding its
//! key: no field can carry because every coordinate stays `<= D`. The top bit
//! of every key type is kept free so that `key + unit` never wraps during
//! range arithmetic.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

pub(crate) trait Key:
    Copy + Ord + Eq + Hash + Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + 'static
{
    const ZERO: Self;
    const MAX: Self;
    const BYTES: u64;
    const USABLE_BITS: u32;

    fn from_field(value: u32, shift: u32) -> Self;
    fn field(self, shift: u32, mask: u32) -> u32;

    /// Unwraps storage of this width; `None` for the other width.
    fn unwrap(keys: Keys) -> Option<Vec<Self>>;
}

macro_rules! impl_key {
    ($t:ty, $variant:ident) => {
        impl Key for $t {
            const ZERO: Self = 0;
            const MAX: Self = <$t>::MAX;
            const BYTES: u64 = std::mem::size_of::<$t>() as u64;
            const USABLE_BITS: u32 = <$t>::BITS - 1;

            #[inline]
            fn from_field(value: u32, shift: u32) -> Self {
                (value as $t) << shift
            }

            #[inline]
            fn field(self, shift: u32, mask: u32) -> u32 {
                ((self >> shift) as u32) & mask
            }

            fn unwrap(keys: Keys) -> Option<Vec<Self>> {
                match keys {
                    Keys::$variant(v) => Some(v),
                    _ => None,
                }
            }
        }
    };
}

impl_key!(u64, Narrow);
impl_key!(u128, Wide);

/// Field layout for one `(n_vars, max degree)` context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Packing {
    pub n_vars: usize,
    pub bits: u32,
}

impl Packing {
    pub fn for_degree(n_vars: usize, degree: u32) -> Result<Self> {
        let bits = (u32::BITS - degree.leading_zeros()).max(1);
        let packing = Self { n_vars, bits };
        if packing.total_bits() > u128::USABLE_BITS {
            return Err(Error::Overflow { n_vars, degree });
        }
        Ok(packing)
    }

    fn total_bits(&self) -> u32 {
        self.n_vars as u32 * self.bits
    }

    /// Whether keys fit the narrow (`u64`) representation.
    pub fn is_narrow(&self) -> bool {
        self.total_bits() <= u64::USABLE_BITS
    }

    #[inline]
    pub fn shift(&self, var: usize) -> u32 {
        self.bits * (self.n_vars - 1 - var) as u32
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        if self.bits >= 32 {
            u32::MAX
        } else {
            (1u32 << self.bits) - 1
        }
    }

    #[inline]
    pub fn unit<K: Key>(&self, var: usize) -> K {
        K::from_field(1, self.shift(var))
    }

    pub fn pack<K: Key>(&self, coords: &[u32]) -> K {
        debug_assert_eq!(coords.len(), self.n_vars);
        coords
            .iter()
            .enumerate()
            .fold(K::ZERO, |acc, (i, &c)| acc + K::from_field(c, self.shift(i)))
    }

    pub fn unpack<K: Key>(&self, key: K) -> Vec<u32> {
        (0..self.n_vars).map(|i| self.coord(key, i)).collect()
    }

    #[inline]
    pub fn coord<K: Key>(&self, key: K, var: usize) -> u32 {
        key.field(self.shift(var), self.mask())
    }

    #[inline]
    pub fn degree<K: Key>(&self, key: K) -> u64 {
        (0..self.n_vars).map(|i| self.coord(key, i) as u64).sum()
    }
}

/// Sorted key storage in whichever width the packing needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Keys {
    Narrow(Vec<u64>),
    Wide(Vec<u128>),
}

macro_rules! with_keys {
    ($keys:expr, $v:ident => $body:expr) => {
        match $keys {
            $crate::packed::Keys::Narrow($v) => $body,
            $crate::packed::Keys::Wide($v) => $body,
        }
    };
}
pub(crate) use with_keys;

impl Keys {
    pub fn empty_for(packing: Packing) -> Self {
        if packing.is_narrow() {
            Keys::Narrow(Vec::new())
        } else {
            Keys::Wide(Vec::new())
        }
    }

    pub fn len(&self) -> usize {
        with_keys!(self, v => v.len())
    }

    pub fn key_bytes(&self) -> u64 {
        match self {
            Keys::Narrow(_) => u64::BYTES,
            Keys::Wide(_) => u128::BYTES,
        }
    }

    /// Packs sorted-or-not coordinate rows, sorting and deduplicating.
    pub fn from_coords<'a>(packing: Packing, rows: impl Iterator<Item = &'a [u32]>) -> Self {
        fn build<'a, K: Key>(packing: Packing, rows: impl Iterator<Item = &'a [u32]>) -> Vec<K> {
            let mut keys: Vec<K> = rows.map(|r| packing.pack(r)).collect();
            keys.sort_unstable();
            keys.dedup();
            keys
        }
        if packing.is_narrow() {
            Keys::Narrow(build(packing, rows))
        } else {
            Keys::Wide(build(packing, rows))
        }
    }

    /// Re-encodes keys from one layout into another, preserving order.
    pub fn repack(&self, from: Packing, to: Packing) -> Self {
        fn convert<A: Key, B: Key>(src: &[A], from: Packing, to: Packing) -> Vec<B> {
            let mut row = vec![0u32; from.n_vars];
            src.iter()
                .map(|&k| {
                    for (i, c) in row.iter_mut().enumerate() {
                        *c = from.coord(k, i);
                    }
                    to.pack(&row)
                })
                .collect()
        }
        if from == to {
            return self.clone();
        }
        match (to.is_narrow(), self) {
            (true, Keys::Narrow(v)) => Keys::Narrow(convert(v, from, to)),
            (true, Keys::Wide(v)) => Keys::Narrow(convert(v, from, to)),
            (false, Keys::Narrow(v)) => Keys::Wide(convert(v, from, to)),
            (false, Keys::Wide(v)) => Keys::Wide(convert(v, from, to)),
        }
    }
}
