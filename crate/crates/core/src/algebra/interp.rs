use super::poly::UniPoly;
use super::scalar::Scalar;
use super::AlgebraError;

/// The unique polynomial of degree below `points.len()` through `points`.
///
/// Newton divided differences, exact over the scalar field.
pub fn lagrange_interpolate<T: Scalar>(points: &[(T, T)]) -> Result<UniPoly<T>, AlgebraError> {
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(AlgebraError::DuplicateAbscissa { index: i });
        }
    }
    let n = points.len();
    let mut table: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = table[i].clone() - table[i - 1].clone();
            let den = points[i].0.clone() - points[i - level].0.clone();
            table[i] = num / den;
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let factor = UniPoly::linear(-points[i].0.clone(), T::one());
        acc = &(&acc * &factor) + &UniPoly::constant(table[i].clone());
    }
    Ok(acc)
}
