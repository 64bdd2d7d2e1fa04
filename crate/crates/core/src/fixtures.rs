//! Small hand-checked instances used by tests, benches and the CLI docs.

use crate::hitting_set::HittingSetInstance;
use crate::matrix::Matrix;

fn binary(d: usize, ones: &[&[usize]]) -> Matrix {
    let rows = ones
        .iter()
        .map(|set| (1..=d).map(|j| set.contains(&j) as u32).collect())
        .collect();
    Matrix::new(rows).expect("fixture rows are distinct")
}

/// 5×7 binary matrix with rows of weight one, two and three:
/// {1,5}, {1,4,7}, {3}, {2,4,5}, {6,7}.
pub fn weight_classes_5x7() -> Matrix {
    binary(7, &[&[1, 5], &[1, 4, 7], &[3], &[2, 4, 5], &[6, 7]])
}

/// 7×10 binary matrix whose non-null rows form a sunflower with core {1,2}
/// and petals {4,9}, {7}, {3,10}, {6,8}, {5}, {}; minimum solution size 6.
pub fn sunflower_7x10() -> Matrix {
    binary(
        10,
        &[
            &[1, 2, 4, 9],
            &[1, 2, 7],
            &[1, 2, 3, 10],
            &[1, 2, 6, 8],
            &[1, 2, 5],
            &[1, 2],
            &[],
        ],
    )
}

/// Hitting set instance over {1..6} with five sets; {3,5} hits all of them.
pub fn hitting_set_6_5() -> HittingSetInstance {
    HittingSetInstance::new(
        6,
        vec![
            vec![1, 2, 3],
            vec![3, 4],
            vec![1, 3, 6],
            vec![1, 2, 4, 5],
            vec![1, 5, 6],
        ],
        2,
    )
    .expect("valid fixture")
}

/// The distinct-vectors image of [`hitting_set_6_5`]: row `i` carries symbol
/// `i` on the elements of set `i`, plus a null row.
pub fn hitting_set_matrix_6x6() -> Matrix {
    Matrix::new(vec![
        vec![1, 1, 1, 0, 0, 0],
        vec![0, 0, 2, 2, 0, 0],
        vec![3, 0, 3, 0, 0, 3],
        vec![4, 4, 0, 4, 4, 0],
        vec![5, 0, 0, 0, 5, 5],
        vec![0, 0, 0, 0, 0, 0],
    ])
    .expect("valid fixture")
}

/// 10×11 binary matrix with profile (3,5): three weight-5 rows, four
/// weight-4 rows, two weight-3 rows and the null row. Columns 1..3 are the
/// core of the weight-5 rows, columns 4..11 each join one weight-4 row to
/// one weight-3 or weight-5 row. Minimum solution {3,4,6,9,10}.
pub fn matching_10x11() -> Matrix {
    binary(
        11,
        &[
            &[1, 2, 3, 4, 5],
            &[1, 2, 3, 6, 7],
            &[1, 2, 3, 8, 9],
            &[1, 2, 4, 7],
            &[1, 2, 5, 9],
            &[1, 2, 8, 10],
            &[1, 2, 6, 11],
            &[2, 3, 10],
            &[1, 3, 11],
            &[],
        ],
    )
}

/// Edge-incidence rows of the graph with edges 12, 34, 14, 13 plus the null
/// row. Rows 1 and 2 are at distance 4; profile (2,4).
pub fn padding_seed_5x4() -> Matrix {
    binary(4, &[&[1, 2], &[3, 4], &[1, 4], &[1, 3], &[]])
}
