#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "brp/hopf.hpp"
#include "brp/tensor.hpp"

namespace brp {

enum class MorphismKind { phi_g, psi };

// Memoized images of trees under phi_g or psi; forests are shuffles of tree images.
class MorphismTable {
public:
    MorphismTable(MorphismKind kind, int N, int d);

    MorphismKind kind() const { return kind_; }
    int level() const { return N_; }
    int alphabet() const { return d_; }

    TensorElem tree_image(const Tree& t) const;
    TensorElem image(const Forest& f) const;
    TensorElem image(const HElem& h) const;

    // negative controls overwrite one entry
    void corrupt(const Tree& t, TensorElem value);
    std::map<Tree, TensorElem> snapshot() const;

private:
    MorphismKind kind_;
    int N_;
    int d_;
    mutable std::mutex mu_;
    mutable std::map<Tree, TensorElem> cache_;
};

TensorElem phi_g(const HElem& h);
TensorElem psi(const HElem& h, int N);
const TensorElem& psi_tree(const Tree& t);
const TensorElem& phi_g_tree(const Tree& t);

// <psi*(w), h> = coefficient of w in psi(h), over forests of grade |w| <= N
HElem psi_adjoint(const Word& w, int N, int d);
HElem phi_g_adjoint(const Word& w, int d);

// linear tree image of a word over single-vertex letters
HElem chain_embedding(const TensorElem& x);

struct MorphismReport {
    bool pass = true;
    std::string check;
    std::optional<Forest> witness;
    std::string detail;
    long forests_checked = 0;
};

MorphismReport verify_hopf_morphism(const MorphismTable& m, int N, int d);
MorphismReport verify_hopf_morphism(MorphismKind which, int N, int d);

}  // namespace brp
