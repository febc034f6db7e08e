use proptest::prelude::*;
use riesz::io::{matrix_json_row, parse_scale, read_matrices, read_spectra, write_matrices, FormatError};
use riesz::report::Sci;
use riesz::riesz_core::algebra::{Algebra, HermitianMatrix};
use riesz::riesz_core::riesz::Scale;

fn coord_count(algebra: Algebra, m: usize) -> usize {
    m + m * (m - 1) / 2 * algebra.beta() as usize
}

fn matrix_strategy() -> impl Strategy<Value = HermitianMatrix> {
    (proptest::sample::select(Algebra::MATRIX.to_vec()), 1usize..=4).prop_flat_map(|(alg, m)| {
        proptest::collection::vec(-1e6f64..1e6, coord_count(alg, m))
            .prop_map(move |c| HermitianMatrix::from_realified(alg, m, &c).unwrap())
    })
}

proptest! {
    #[test]
    fn csv_round_trip_is_bit_exact(xs in proptest::collection::vec(matrix_strategy(), 1..4)) {
        let (alg, m) = (xs[0].algebra(), xs[0].order());
        let xs: Vec<_> = xs.into_iter().filter(|x| x.algebra() == alg && x.order() == m).collect();
        let mut buf = Vec::new();
        write_matrices(&mut buf, alg, m, &xs).unwrap();
        let set = read_matrices(buf.as_slice()).unwrap();
        prop_assert_eq!(set.algebra, alg);
        prop_assert_eq!(set.order, m);
        prop_assert_eq!(set.matrices.len(), xs.len());
        for (a, b) in set.matrices.iter().zip(&xs) {
            let (ra, rb) = (a.realified(), b.realified());
            prop_assert!(ra.iter().zip(&rb).all(|(u, v)| u.to_bits() == v.to_bits()));
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact(x in matrix_strategy()) {
        let text = format!("{}\n", matrix_json_row(0, &x));
        let set = read_matrices(text.as_bytes()).unwrap();
        let back = set.matrices[0].realified();
        prop_assert!(back.iter().zip(&x.realified()).all(|(u, v)| u.to_bits() == v.to_bits()));
    }

    #[test]
    fn sci_text_parses_back_exactly(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
        let s = Sci(v).to_string();
        prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        let mantissa = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
        prop_assert_eq!(mantissa.len(), 17);
    }
}

#[test]
fn rejects_malformed_files() {
    let cases = [
        "riesz-matrix,beta=3,m=2\n1,2,3\n",
        "riesz-matrix,beta=1,m=2\n1,2\n",
        "riesz-matrix,beta=1,m=2\n1,x,3\n",
        "matrix,beta=1,m=2\n1,0,1\n",
        "riesz-matrix,beta=8,m=2\n1,0,0,0,0,0,0,0,0,1\n",
    ];
    for c in cases {
        assert!(read_matrices(c.as_bytes()).is_err(), "{c:?}");
    }
    match read_matrices("riesz-matrix,beta=1,m=2\n1,0,1\n1,bad,1\n".as_bytes()) {
        Err(FormatError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn spectra_skip_header() {
    let s = read_spectra("lambda_1,lambda_2\n2,1\n3.5,0.5\n".as_bytes()).unwrap();
    assert_eq!(s, vec![vec![2.0, 1.0], vec![3.5, 0.5]]);
}

#[test]
fn scale_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sigma.csv");
    std::fs::write(&path, "riesz-matrix,beta=2,m=2\n2,0.5,0.25,1\n").unwrap();
    let scale = parse_scale(path.to_str().unwrap(), Algebra::Complex, 2).unwrap();
    match scale {
        Scale::Matrix(s) => assert_eq!(s.as_hermitian().realified(), vec![2.0, 0.5, 0.25, 1.0]),
        other => panic!("{other:?}"),
    }
    assert!(parse_scale(path.to_str().unwrap(), Algebra::Real, 2).is_err());
    std::fs::write(&path, "riesz-matrix,beta=1,m=2\n1,2,1\n").unwrap();
    assert!(parse_scale(path.to_str().unwrap(), Algebra::Real, 2).is_err());
}
