use super::partition::Partition;

/// Shape of the RSK insertion tableau of `word` under row insertion.
///
/// Each letter bumps the leftmost strictly larger entry of a row into the
/// next row, so the first row length is the longest weakly increasing
/// subsequence.
pub fn rsk_shape<T: Ord + Copy>(word: &[T]) -> Partition {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for &letter in word {
        let mut x = letter;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&y| y <= x);
            if pos == row.len() {
                row.push(x);
                break;
            }
            std::mem::swap(&mut row[pos], &mut x);
            r += 1;
        }
    }
    Partition::from_parts_unchecked(rows.iter().map(|r| r.len() as u32).collect())
}
