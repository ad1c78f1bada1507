#include "dfarm/error.hpp"
#include "dfarm/models/estimators.hpp"

namespace dfarm::models {

RidgeModel RidgeModel::fit(const Eigen::MatrixXd& x, const Targets& t, double lambda) {
    if (!(lambda >= 0.0)) throw InvalidArgument("ridge lambda must be >= 0");
    const Eigen::Index n = x.rows(), p = x.cols();
    if (n < 2 || static_cast<Eigen::Index>(t.size()) != n) throw TrainingError("ridge needs at least two aligned rows");

    Eigen::MatrixXd y;
    if (t.classification()) {
        y = Eigen::MatrixXd::Zero(n, t.n_classes);
        for (Eigen::Index i = 0; i < n; ++i) y(i, t.classes[static_cast<std::size_t>(i)]) = 1.0;
    } else {
        y = t.values;
    }

    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const Eigen::RowVectorXd y_mean = y.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - x_mean;
    const Eigen::MatrixXd yc = y.rowwise() - y_mean;

    Eigen::MatrixXd gram = xc.transpose() * xc;
    gram.diagonal().array() += lambda;
    const Eigen::MatrixXd rhs = xc.transpose() * yc;

    RidgeModel m;
    m.classification = t.classification();
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (p > 0 && llt.info() == Eigen::Success && llt.rcond() > 1e-13) {
        m.coef = llt.solve(rhs);
    } else {
        m.coef = gram.completeOrthogonalDecomposition().pseudoInverse() * rhs;
        m.used_pseudo_inverse = true;
    }
    m.intercept = (y_mean - x_mean * m.coef).transpose();
    return m;
}

Eigen::VectorXd RidgeModel::predict(const Eigen::MatrixXd& x) const {
    const Eigen::MatrixXd scores = (x * coef).rowwise() + intercept.transpose();
    if (!classification) return scores.col(0);
    Eigen::VectorXd out(scores.rows());
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        Eigen::Index best = 0;
        scores.row(i).maxCoeff(&best);
        out(i) = static_cast<double>(best);
    }
    return out;
}

}  // namespace dfarm::models
