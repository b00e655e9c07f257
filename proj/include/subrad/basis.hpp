#pragma once

#include <stdexcept>

namespace subrad {

// State space of the zero/one-excitation sector, dimension N+2.
// Row/column layout (0-based) used by every operator in this library:
//   0        vacuum, |0; g...g>
//   h        atom h excited (h = 1..N), |0; g..e_h..g>
//   N+1      one cavity photon, |1; g...g>

inline int space_dim(int n_atoms) { return n_atoms + 2; }

inline int vacuum_index() { return 0; }

/// Row of the state with atom h excited; h is 1-based.
inline int atom_row(int h, int n_atoms) {
    if (h < 1 || h > n_atoms) throw std::invalid_argument("atom_row: atom index out of range");
    return h;
}

inline int photon_index(int n_atoms) { return n_atoms + 1; }

/// Decoded basis label. linear_index is 1-based to match the conventional
/// ordering of the N+2 sector states.
struct BasisIndex {
    enum class Kind { vacuum, atom_excited, photon };
    Kind kind;
    int atom;          // 1..N when kind == atom_excited, 0 otherwise
    int linear_index;  // 1..N+2
};

inline BasisIndex basis_state(int linear_index, int n_atoms) {
    if (linear_index < 1 || linear_index > n_atoms + 2)
        throw std::invalid_argument("basis_state: linear index out of range");
    if (linear_index == 1) return {BasisIndex::Kind::vacuum, 0, 1};
    if (linear_index == n_atoms + 2) return {BasisIndex::Kind::photon, 0, linear_index};
    return {BasisIndex::Kind::atom_excited, linear_index - 1, linear_index};
}

}  // namespace subrad
