//! Transcribed tables. Blocks are sorted; labels are the original ones.

/// S(4,5,11) on Z_11.
pub(crate) const S_4_5_11: [[u16; 5]; 66] = [
    [0, 1, 2, 3, 4],
    [0, 1, 2, 5, 6],
    [0, 1, 2, 7, 8],
    [0, 1, 2, 9, 10],
    [0, 1, 3, 5, 7],
    [0, 1, 3, 6, 9],
    [0, 1, 3, 8, 10],
    [0, 1, 4, 5, 10],
    [0, 1, 5, 8, 9],
    [0, 1, 4, 6, 8],
    [0, 1, 4, 7, 9],
    [0, 1, 6, 7, 10],
    [0, 2, 3, 5, 8],
    [0, 2, 3, 7, 9],
    [0, 2, 3, 6, 10],
    [0, 2, 4, 8, 10],
    [0, 2, 6, 8, 9],
    [0, 2, 4, 6, 7],
    [0, 2, 5, 7, 10],
    [0, 5, 6, 8, 10],
    [0, 4, 5, 7, 8],
    [0, 3, 4, 7, 10],
    [0, 3, 5, 9, 10],
    [0, 3, 4, 5, 6],
    [0, 2, 4, 5, 9],
    [0, 3, 4, 8, 9],
    [0, 3, 6, 7, 8],
    [0, 4, 6, 9, 10],
    [0, 5, 6, 7, 9],
    [0, 7, 8, 9, 10],
    [1, 2, 3, 5, 9],
    [1, 2, 3, 7, 10],
    [1, 2, 6, 7, 9],
    [1, 4, 5, 6, 9],
    [1, 2, 4, 5, 7],
    [1, 2, 4, 8, 9],
    [1, 4, 7, 8, 10],
    [2, 3, 4, 7, 8],
    [1, 2, 3, 6, 8],
    [1, 2, 4, 6, 10],
    [3, 4, 6, 8, 10],
    [3, 5, 7, 8, 10],
    [3, 4, 5, 7, 9],
    [3, 6, 7, 9, 10],
    [1, 2, 5, 8, 10],
    [2, 5, 6, 9, 10],
    [1, 3, 4, 5, 8],
    [1, 3, 4, 6, 7],
    [1, 3, 4, 9, 10],
    [2, 3, 4, 6, 9],
    [1, 3, 5, 6, 10],
    [1, 3, 7, 8, 9],
    [1, 5, 6, 7, 8],
    [2, 3, 5, 6, 7],
    [1, 5, 7, 9, 10],
    [1, 6, 8, 9, 10],
    [2, 3, 4, 5, 10],
    [2, 3, 8, 9, 10],
    [2, 4, 5, 6, 8],
    [2, 4, 7, 9, 10],
    [2, 5, 7, 8, 9],
    [2, 6, 7, 8, 10],
    [3, 5, 6, 8, 9],
    [4, 5, 6, 7, 10],
    [4, 5, 8, 9, 10],
    [4, 6, 7, 8, 9],
];

/// Images of point j under each map are row[j].
pub(crate) const PERMS_S11: [[u16; 11]; 13] = [
    [0, 1, 2, 3, 4, 6, 5, 9, 10, 7, 8],
    [0, 1, 2, 3, 6, 7, 9, 4, 5, 10, 8],
    [0, 1, 2, 3, 6, 8, 9, 7, 10, 4, 5],
    [0, 1, 2, 3, 8, 5, 10, 9, 6, 4, 7],
    [0, 1, 2, 3, 9, 5, 8, 4, 10, 6, 7],
    [0, 1, 2, 4, 9, 5, 7, 8, 3, 6, 10],
    [0, 1, 2, 5, 10, 4, 8, 7, 6, 3, 9],
    [0, 1, 2, 6, 9, 7, 4, 8, 5, 10, 3],
    [0, 1, 2, 7, 5, 4, 9, 10, 3, 8, 6],
    [0, 1, 2, 7, 3, 10, 6, 8, 4, 9, 5],
    [0, 1, 2, 8, 6, 10, 4, 5, 9, 7, 3],
    [0, 1, 2, 8, 10, 6, 4, 9, 7, 5, 3],
    [0, 1, 2, 9, 8, 4, 6, 5, 3, 7, 10],
];

pub(crate) const PERMS_S10: [[u16; 10]; 20] = [
    [0, 6, 2, 5, 4, 9, 7, 1, 8, 3],
    [0, 5, 2, 1, 8, 6, 9, 3, 4, 7],
    [0, 4, 2, 7, 8, 1, 9, 5, 6, 3],
    [0, 9, 2, 5, 8, 3, 1, 4, 6, 7],
    [0, 9, 2, 7, 8, 4, 1, 6, 3, 5],
    [0, 1, 2, 7, 8, 5, 4, 3, 9, 6],
    [0, 6, 2, 4, 8, 7, 9, 3, 5, 1],
    [0, 9, 2, 5, 6, 8, 4, 7, 1, 3],
    [0, 7, 2, 5, 3, 6, 9, 4, 8, 1],
    [0, 6, 2, 9, 3, 8, 4, 1, 7, 5],
    [0, 6, 2, 7, 9, 1, 4, 5, 3, 8],
    [0, 5, 2, 4, 9, 8, 6, 1, 7, 3],
    [0, 8, 2, 4, 1, 9, 3, 6, 7, 5],
    [0, 4, 2, 5, 7, 1, 6, 8, 3, 9],
    [0, 5, 2, 8, 7, 3, 9, 1, 4, 6],
    [0, 6, 2, 8, 5, 4, 3, 1, 9, 7],
    [0, 5, 4, 7, 2, 3, 9, 6, 1, 8],
    [0, 6, 4, 5, 8, 1, 7, 2, 9, 3],
    [0, 1, 4, 9, 6, 5, 3, 2, 8, 7],
    [0, 2, 4, 8, 6, 9, 3, 1, 7, 5],
];

/// H(5,4,4,3) on Z_8 ∪ {8..19}; groups {0,2,4,6}, {1,3,5,7}, {i,i+3,i+6,i+9} for i = 8, 9, 10.
pub(crate) const H_5_4: [[u16; 4]; 160] = [
    [0, 1, 8, 9],
    [2, 5, 8, 9],
    [3, 8, 9, 10],
    [4, 8, 9, 13],
    [6, 8, 9, 16],
    [7, 8, 9, 19],
    [0, 7, 8, 10],
    [1, 4, 8, 10],
    [2, 8, 10, 12],
    [5, 8, 10, 15],
    [6, 8, 10, 18],
    [5, 6, 8, 13],
    [6, 7, 8, 15],
    [0, 3, 8, 15],
    [2, 7, 8, 13],
    [1, 8, 13, 15],
    [0, 8, 13, 18],
    [3, 8, 12, 13],
    [4, 5, 8, 12],
    [7, 8, 12, 16],
    [4, 7, 8, 18],
    [0, 8, 12, 19],
    [5, 8, 18, 19],
    [0, 5, 8, 16],
    [1, 6, 8, 12],
    [1, 2, 8, 19],
    [1, 8, 16, 18],
    [2, 3, 8, 18],
    [2, 8, 15, 16],
    [3, 4, 8, 16],
    [3, 6, 8, 19],
    [4, 8, 15, 19],
    [0, 1, 11, 13],
    [0, 7, 12, 13],
    [2, 5, 12, 13],
    [4, 7, 11, 13],
    [6, 11, 12, 13],
    [1, 12, 13, 14],
    [4, 12, 13, 17],
    [1, 4, 13, 18],
    [6, 7, 13, 18],
    [1, 2, 9, 13],
    [2, 3, 13, 17],
    [5, 13, 17, 18],
    [1, 6, 13, 17],
    [0, 3, 9, 13],
    [0, 13, 15, 17],
    [3, 6, 13, 15],
    [0, 5, 13, 14],
    [5, 9, 11, 13],
    [4, 5, 13, 15],
    [3, 4, 13, 14],
    [3, 11, 13, 18],
    [2, 11, 13, 15],
    [7, 13, 14, 15],
    [6, 9, 13, 14],
    [2, 13, 14, 18],
    [7, 9, 13, 17],
    [0, 5, 15, 19],
    [2, 3, 15, 19],
    [0, 5, 9, 10],
    [0, 5, 12, 17],
    [0, 5, 11, 18],
    [1, 2, 11, 18],
    [6, 7, 9, 10],
    [0, 1, 10, 12],
    [0, 1, 14, 15],
    [0, 1, 16, 17],
    [0, 1, 18, 19],
    [2, 7, 18, 19],
    [0, 9, 17, 19],
    [0, 7, 17, 18],
    [3, 6, 17, 18],
    [5, 6, 9, 17],
    [3, 9, 16, 17],
    [0, 3, 10, 17],
    [0, 10, 14, 18],
    [0, 3, 16, 18],
    [3, 14, 18, 19],
    [0, 3, 12, 14],
    [0, 11, 12, 16],
    [0, 7, 15, 16],
    [0, 10, 11, 15],
    [0, 3, 11, 19],
    [0, 7, 9, 11],
    [0, 7, 14, 19],
    [0, 9, 14, 16],
    [4, 5, 9, 16],
    [5, 9, 14, 19],
    [2, 5, 17, 19],
    [5, 15, 16, 17],
    [5, 6, 11, 15],
    [2, 5, 11, 16],
    [1, 9, 11, 16],
    [3, 6, 9, 11],
    [1, 6, 10, 11],
    [1, 6, 15, 16],
    [1, 6, 9, 19],
    [1, 4, 14, 19],
    [1, 9, 10, 14],
    [1, 4, 9, 17],
    [1, 4, 11, 15],
    [1, 4, 12, 16],
    [1, 2, 12, 17],
    [3, 4, 15, 17],
    [3, 10, 14, 15],
    [2, 3, 10, 11],
    [2, 3, 12, 16],
    [3, 6, 14, 16],
    [5, 12, 14, 16],
    [6, 7, 12, 14],
    [5, 6, 10, 14],
    [5, 6, 16, 18],
    [6, 7, 11, 16],
    [6, 7, 17, 19],
    [5, 6, 12, 19],
    [5, 10, 11, 12],
    [7, 10, 11, 18],
    [1, 2, 10, 15],
    [1, 10, 17, 18],
    [2, 9, 10, 17],
    [1, 2, 14, 16],
    [1, 6, 14, 18],
    [1, 11, 12, 19],
    [2, 7, 11, 12],
    [1, 15, 17, 19],
    [2, 3, 9, 14],
    [4, 7, 9, 14],
    [4, 10, 12, 14],
    [7, 10, 12, 17],
    [2, 7, 15, 17],
    [2, 16, 17, 18],
    [2, 5, 10, 18],
    [3, 4, 10, 18],
    [2, 5, 14, 15],
    [2, 7, 9, 16],
    [2, 7, 10, 14],
    [2, 9, 11, 19],
    [2, 12, 14, 19],
    [3, 4, 9, 19],
    [3, 4, 11, 12],
    [3, 6, 10, 12],
    [3, 11, 15, 16],
    [3, 12, 17, 19],
    [4, 5, 10, 17],
    [4, 5, 11, 19],
    [4, 17, 18, 19],
    [4, 5, 14, 18],
    [4, 11, 16, 18],
    [4, 7, 10, 15],
    [4, 7, 12, 19],
    [4, 7, 16, 17],
    [4, 9, 10, 11],
    [4, 14, 15, 16],
    [6, 10, 15, 17],
    [6, 11, 18, 19],
    [6, 12, 16, 17],
    [6, 14, 15, 19],
    [7, 11, 15, 19],
    [7, 14, 16, 18],
];

/// H(6,3,4,3) on Z_9 ∪ {9..17}; groups {i,i+3,i+6} for i = 0, 1, 2, 9, 10, 11.
/// The printed block "{8,10,15,1}" is read as {8,10,15,17}: {1,8,10,15} double-covers
/// three triples through point 1 and leaves {8,10,17}, {8,15,17}, {10,15,17} uncovered.
pub(crate) const H_6_3: [[u16; 4]; 135] = [
    [0, 1, 2, 9],
    [0, 1, 8, 10],
    [0, 1, 5, 11],
    [0, 1, 12, 14],
    [0, 1, 13, 15],
    [0, 1, 16, 17],
    [3, 5, 12, 14],
    [4, 8, 12, 14],
    [7, 10, 12, 14],
    [2, 12, 13, 14],
    [6, 12, 14, 16],
    [0, 2, 11, 13],
    [1, 2, 13, 17],
    [2, 3, 4, 13],
    [2, 6, 9, 13],
    [2, 7, 13, 15],
    [1, 9, 11, 13],
    [3, 9, 13, 14],
    [4, 5, 9, 13],
    [0, 7, 9, 13],
    [8, 9, 13, 17],
    [0, 5, 13, 17],
    [4, 6, 13, 17],
    [3, 13, 15, 17],
    [6, 8, 13, 15],
    [7, 12, 13, 17],
    [0, 4, 9, 17],
    [1, 9, 10, 17],
    [0, 4, 12, 13],
    [0, 8, 13, 14],
    [5, 7, 13, 14],
    [1, 3, 5, 13],
    [1, 8, 12, 13],
    [1, 6, 13, 14],
    [3, 11, 12, 13],
    [3, 7, 8, 13],
    [6, 7, 11, 13],
    [4, 8, 11, 13],
    [4, 13, 14, 15],
    [5, 6, 12, 13],
    [5, 11, 13, 15],
    [0, 4, 8, 15],
    [0, 4, 11, 16],
    [0, 4, 5, 10],
    [0, 2, 4, 14],
    [0, 5, 9, 14],
    [0, 10, 14, 15],
    [0, 7, 11, 15],
    [0, 2, 15, 17],
    [0, 5, 15, 16],
    [0, 5, 7, 12],
    [0, 7, 14, 16],
    [0, 7, 8, 17],
    [0, 10, 12, 17],
    [0, 2, 7, 10],
    [0, 2, 12, 16],
    [0, 8, 11, 12],
    [0, 9, 10, 11],
    [0, 8, 9, 16],
    [1, 2, 6, 16],
    [1, 2, 10, 12],
    [6, 7, 8, 12],
    [2, 3, 7, 12],
    [2, 6, 7, 14],
    [2, 7, 16, 17],
    [2, 7, 9, 11],
    [6, 8, 9, 11],
    [6, 8, 10, 14],
    [4, 6, 9, 14],
    [6, 9, 16, 17],
    [5, 7, 9, 17],
    [1, 3, 8, 9],
    [1, 8, 11, 16],
    [1, 8, 14, 15],
    [5, 6, 14, 15],
    [5, 6, 7, 16],
    [6, 11, 15, 16],
    [3, 8, 11, 15],
    [4, 10, 11, 15],
    [4, 6, 10, 12],
    [2, 4, 11, 12],
    [4, 5, 6, 11],
    [3, 4, 5, 15],
    [5, 7, 10, 15],
    [3, 5, 7, 11],
    [5, 10, 11, 12],
    [5, 9, 11, 16],
    [2, 4, 9, 16],
    [2, 4, 10, 17],
    [2, 6, 12, 17],
    [1, 6, 11, 12],
    [1, 3, 10, 11],
    [7, 8, 10, 11],
    [4, 8, 9, 10],
    [3, 4, 9, 11],
    [1, 2, 3, 14],
    [2, 9, 10, 14],
    [3, 5, 9, 10],
    [6, 7, 9, 10],
    [6, 7, 15, 17],
    [1, 5, 15, 17],
    [1, 6, 8, 17],
    [1, 2, 11, 15],
    [1, 3, 12, 17],
    [3, 5, 16, 17],
    [4, 5, 12, 17],
    [4, 5, 14, 16],
    [1, 3, 15, 16],
    [2, 14, 15, 16],
    [1, 5, 6, 9],
    [1, 5, 10, 14],
    [1, 5, 12, 16],
    [3, 8, 10, 12],
    [3, 4, 8, 17],
    [1, 6, 10, 15],
    [1, 9, 14, 16],
    [2, 3, 9, 17],
    [2, 3, 10, 15],
    [2, 3, 11, 16],
    [2, 4, 6, 15],
    [2, 6, 10, 11],
    [3, 4, 10, 14],
    [3, 4, 12, 16],
    [3, 7, 9, 16],
    [3, 7, 10, 17],
    [3, 7, 14, 15],
    [3, 8, 14, 16],
    [4, 6, 8, 16],
    [4, 15, 16, 17],
    [5, 6, 10, 17],
    [7, 8, 9, 14],
    [7, 8, 15, 16],
    [7, 11, 12, 16],
    [8, 10, 15, 17],
    [8, 12, 16, 17],
];

/// H(7,2,4,3) on Z_14; groups {i,i+7}.
pub(crate) const H_7_2: [[u16; 4]; 70] = [
    [0, 1, 2, 3],
    [0, 1, 4, 5],
    [0, 1, 6, 9],
    [0, 1, 10, 11],
    [0, 1, 12, 13],
    [0, 2, 4, 6],
    [0, 2, 8, 12],
    [0, 2, 10, 13],
    [0, 2, 5, 11],
    [0, 4, 10, 12],
    [0, 6, 8, 10],
    [0, 3, 5, 6],
    [0, 6, 11, 12],
    [0, 3, 9, 12],
    [0, 5, 9, 10],
    [0, 5, 8, 13],
    [0, 3, 4, 13],
    [0, 3, 8, 11],
    [0, 9, 11, 13],
    [0, 4, 8, 9],
    [1, 2, 4, 13],
    [2, 3, 5, 13],
    [2, 8, 11, 13],
    [2, 7, 12, 13],
    [2, 3, 4, 12],
    [2, 3, 7, 8],
    [2, 3, 6, 11],
    [2, 5, 6, 8],
    [2, 4, 8, 10],
    [2, 4, 5, 7],
    [1, 2, 5, 10],
    [3, 4, 5, 8],
    [1, 2, 6, 7],
    [1, 2, 11, 12],
    [2, 7, 10, 11],
    [1, 5, 6, 11],
    [6, 9, 10, 11],
    [6, 7, 8, 11],
    [4, 6, 8, 12],
    [4, 7, 8, 13],
    [2, 6, 10, 12],
    [1, 4, 6, 10],
    [1, 3, 6, 12],
    [3, 7, 11, 12],
    [3, 5, 9, 11],
    [1, 3, 5, 7],
    [3, 7, 9, 13],
    [3, 4, 6, 7],
    [1, 3, 4, 9],
    [1, 4, 7, 12],
    [1, 9, 10, 12],
    [1, 5, 9, 13],
    [4, 5, 6, 9],
    [5, 7, 8, 9],
    [5, 8, 10, 11],
    [5, 7, 11, 13],
    [4, 5, 10, 13],
    [8, 9, 10, 13],
    [4, 9, 12, 13],
    [1, 3, 11, 13],
    [1, 7, 9, 11],
    [1, 7, 10, 13],
    [3, 6, 8, 9],
    [3, 8, 12, 13],
    [4, 7, 9, 10],
    [5, 6, 7, 10],
    [6, 7, 9, 12],
    [7, 8, 10, 12],
    [8, 9, 11, 12],
    [10, 11, 12, 13],
];

pub(crate) const PERMS_H7: [[u16; 14]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13],
    [0, 8, 6, 9, 3, 12, 4, 7, 1, 13, 2, 10, 5, 11],
    [0, 12, 11, 8, 13, 3, 2, 7, 5, 4, 1, 6, 10, 9],
    [1, 3, 9, 7, 4, 6, 12, 8, 10, 2, 0, 11, 13, 5],
    [1, 4, 2, 5, 10, 13, 7, 8, 11, 9, 12, 3, 6, 0],
    [1, 12, 4, 0, 10, 13, 9, 8, 5, 11, 7, 3, 6, 2],
    [2, 0, 4, 5, 3, 6, 1, 9, 7, 11, 12, 10, 13, 8],
    [2, 3, 5, 1, 13, 11, 7, 9, 10, 12, 8, 6, 4, 0],
];
