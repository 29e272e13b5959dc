use num_complex::Complex64;

/// Determinant of a row-major `n × n` matrix by LU with partial pivoting.
pub fn det(a: &[Complex64], n: usize) -> Complex64 {
    assert_eq!(a.len(), n * n, "matrix size mismatch");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut m = a.to_vec();
    let mut d = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let (piv, best) = (col..n)
            .map(|r| (r, m[r * n + col].norm()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for c in 0..n {
                m.swap(piv * n + c, col * n + c);
            }
            d = -d;
        }
        let p = m[col * n + col];
        d *= p;
        for r in col + 1..n {
            let f = m[r * n + col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for c in col + 1..n {
                let v = m[col * n + c];
                m[r * n + c] -= f * v;
            }
        }
    }
    d
}

/// Principal submatrix of a row-major `n × n` matrix on `idx`.
pub fn submatrix(a: &[Complex64], n: usize, idx: &[usize]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(idx.len() * idx.len());
    for &i in idx {
        for &j in idx {
            out.push(a[i * n + j]);
        }
    }
    out
}
