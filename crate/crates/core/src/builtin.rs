//! The three morphisms behind the 5-, 3- and 2-letter constructions.

use crate::error::{Error, Result};
use crate::morphism::{FixedPointSpec, UniformMorphism};

/// Common 48-letter prefix of every image of [`m`].
pub const C: &str = "024130124023013024134124023413024134124023013024";

const M_TAILS: [&str; 5] = [
    "13012402301302402301240241341240230130240230124",
    "02301240241301240230130240234124024134124023013",
    "02341240241301240234130241301240230130240230124",
    "13012402301302402301240241341240230130240234124",
    "02341240241301240230130240234124024134124023013",
];

const F3_IMAGES: [&str; 5] = ["0001022", "0102122", "0211122", "0210112", "0002122"];
const F2_IMAGES: [&str; 5] = ["0000001", "0101001", "0010011", "0001111", "1011011"];

pub const M_Q: usize = 95;
pub const C_LEN: usize = 48;

/// Verifies the embedded tables: `|c| = 48` and every image of `m` has length 95.
pub fn self_check() -> Result<()> {
    if C.len() != C_LEN {
        return Err(Error::InvalidArgument(format!(
            "builtin constant c has length {}",
            C.len()
        )));
    }
    for (letter, tail) in M_TAILS.iter().enumerate() {
        if C.len() + tail.len() != M_Q {
            return Err(Error::NonUniform {
                letter,
                expected: M_Q,
                found: C.len() + tail.len(),
            });
        }
    }
    Ok(())
}

pub fn m_images() -> Vec<String> {
    M_TAILS.iter().map(|t| format!("{C}{t}")).collect()
}

/// The 95-uniform morphism over five letters.
pub fn m() -> UniformMorphism {
    let images = m_images();
    let refs: Vec<&str> = images.iter().map(String::as_str).collect();
    let morphism = UniformMorphism::from_digit_images(5, 5, &refs).expect("builtin m is valid");
    debug_assert_eq!(morphism.q(), M_Q);
    morphism
}

/// 7-uniform morphism from five letters to three.
pub fn f3() -> UniformMorphism {
    UniformMorphism::from_digit_images(5, 3, &F3_IMAGES).expect("builtin f3 is valid")
}

/// 7-uniform morphism from five letters to two.
pub fn f2() -> UniformMorphism {
    UniformMorphism::from_digit_images(5, 2, &F2_IMAGES).expect("builtin f2 is valid")
}

/// The fixed point of [`m`] seeded with `0`.
pub fn m_spec() -> FixedPointSpec {
    FixedPointSpec::new(m(), 0).expect("0 is prolongable under m")
}

/// Looks a builtin morphism up by name (`m`, `f3`, `f2`).
pub fn by_name(name: &str) -> Option<UniformMorphism> {
    match name {
        "m" => Some(m()),
        "f3" => Some(f3()),
        "f2" => Some(f2()),
        _ => None,
    }
}
