//! Plain statements of what each directive decides.

pub fn statement(check: &str) -> &'static str {
    match check {
        "fundamental_identity" => {
            "The n-bracket acts as a derivation of itself: [x_1..x_{n-1}, [y_1..y_n]] equals the sum over i of \
             [y_1..[x_1..x_{n-1}, y_i]..y_n], for all basis tuples."
        }
        "leibniz" => {
            "The bracket induced on (n-1)-fold wedges, X.Y = sum_i Y_1^..^[X, Y_i]^..^Y_{n-1}, \
             satisfies the left Leibniz identity."
        }
        "adjoint_representation" => {
            "The adjoint action ad(x_1..x_{n-1}) = [x_1..x_{n-1}, .] defines a representation of the algebra."
        }
        "rinehart" => {
            "The bracket is skew, satisfies the fundamental identity, is linear over the base ring except in the \
             last slot where it obeys the Leibniz rule through the anchor, the anchor is linear in every slot, and \
             the anchor turns brackets into commutators of derivations."
        }
        "leibniz_rinehart" => {
            "The (n-1)-fold wedges of the module form a Leibniz-Rinehart algebra: Leibniz identity, anchor is a \
             bracket morphism, anchor is linear over the base ring, Leibniz rule in the second argument."
        }
        "morphism" => {
            "The module map Psi: E -> F over psi: A -> B preserves brackets and relates anchors: \
             rho_F(Psi X)(psi a) = psi(rho_E(X) a) and Psi[X_1..X_n] = [Psi X_1..Psi X_n]."
        }
        "comorphism" => {
            "The map Psi from F to E tensor B (against psi: A -> B) relates anchors and preserves brackets, \
             the bracket of images being corrected by anchor terms acting on the coefficients of Psi."
        }
        "graph_morphism" => {
            "The graph of the morphism candidate, glued along psi, is closed under the bracket of the combined \
             structure and compatible with both anchors."
        }
        "graph_comorphism" => {
            "The graph of the comorphism candidate, glued along psi, is closed under the bracket of the combined \
             structure and compatible with both anchors."
        }
        "intertwine" => {
            "The comorphism candidate intertwines the induced maps on (n-1)-wedges: anchors and the induced \
             Leibniz brackets of wedges are compatible."
        }
        "nambu_fi" => {
            "The tensor is Nambu-Poisson: every Hamiltonian vector field of n-1 functions is a derivation of the \
             n-bracket (checked on probe functions)."
        }
        "nambu_map" => {
            "The polynomial map pushes pi1 forward to pi2 at every point, so pullback commutes with the n-brackets."
        }
        "coisotropic" => {
            "The submanifold is coisotropic: the sharp map of the tensor sends n-1 conormal covectors into the \
             tangent space, checked on defining functions."
        }
        "nambu_submanifold" => {
            "The tensor is tangent to the submanifold: Hamiltonian vector fields of arbitrary functions preserve the \
             vanishing ideal."
        }
        "nambu_relation" => {
            "The relation is coisotropic for pi2 combined with the sign-twisted pi1 on the product space."
        }
        "algebroid" => {
            "The bundle carries an n-Lie algebroid: the section bracket and anchor satisfy the Rinehart identities \
             and the anchor maps brackets to commutators of vector fields on coordinates."
        }
        "subalgebroid" => {
            "The subbundle over the submanifold is a subalgebroid: its anchors are tangent to the base and its \
             brackets, restricted to the base, close in the subbundle."
        }
        "morphism_algebroid" => {
            "The forward bundle map relates anchors through the base map and preserves brackets up to the anchor \
             corrections on its coefficients; cross-checked through its graph in the product with the twisted source."
        }
        "comorphism_algebroid" => {
            "The pullback on sections relates the anchors through the base map and preserves brackets; \
             cross-checked through the induced map of Rinehart pairs."
        }
        "duality_comorphism" => {
            "A comorphism of rank-n algebroids corresponds to a Nambu-Poisson map between the dual bundles with \
             their linear tensors; both sides are computed and must agree."
        }
        "duality_morphism" => {
            "A morphism of rank-n algebroids corresponds to a Nambu-Poisson relation given by the dual comorphism; \
             both sides are computed and must agree."
        }
        "annihilator" => {
            "A subbundle over a submanifold is a subalgebroid exactly when its annihilator is coisotropic for the \
             dual linear tensor; both sides are computed and must agree."
        }
        _ => "unknown check",
    }
}
