//! Small-integer handles into the tables that own them.

use serde::{Deserialize, Serialize};
use std::fmt;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident, $prefix:literal) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl From<usize> for $name {
            #[inline]
            fn from(i: usize) -> Self {
                $name(u32::try_from(i).expect("id overflows u32"))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(
    /// An object of a category, 2-category or double category.
    ObjId,
    "o"
);
id_type!(
    /// A morphism of a finite category. Vertical morphisms of a double category are morphisms of its
    /// vertical category.
    MorId,
    "m"
);
id_type!(
    /// An element of a finite commutative monoid.
    ElemId,
    "e"
);
id_type!(
    /// A horizontal 1-cell of a double category.
    HorId,
    "h"
);
id_type!(
    /// A square of a tabulated double category.
    SqId,
    "s"
);
id_type!(
    /// A 1-cell of a 2-category.
    OneCellId,
    "c"
);
id_type!(
    /// A 2-cell of a 2-category.
    TwoCellId,
    "t"
);

/// Vertical morphisms are morphisms of the vertical category.
pub type VertId = MorId;

pub(crate) fn ids<I: From<usize>>(n: usize) -> impl Iterator<Item = I> {
    (0..n).map(I::from)
}
