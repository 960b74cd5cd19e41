#include "noq/io.hpp"

#include <fstream>
#include <sstream>

namespace noq {

Json matrix_to_json(const Matrix& m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json rr = Json::array(), ri = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return Json{{"re", re}, {"im", im}};
}

Matrix matrix_from_json(const Json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const Eigen::Index rows = Eigen::Index(re.size());
    if (rows == 0) throw ValidationError("matrix_from_json: empty matrix");
    const Eigen::Index cols = Eigen::Index(re.at(0).size());
    if (im.size() != size_t(rows))
        throw ValidationError("matrix_from_json: re/im shape mismatch");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (Eigen::Index(re.at(r).size()) != cols ||
            Eigen::Index(im.at(r).size()) != cols)
            throw ValidationError("matrix_from_json: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = Complex(re.at(r).at(c).get<double>(),
                              im.at(r).at(c).get<double>());
    }
    return m;
}

Json state_to_json(const DensityMatrix& rho) {
    Json j = matrix_to_json(rho.rho);
    j["dim_a"] = rho.cut.dim_a;
    j["dim_b"] = rho.cut.dim_b;
    return j;
}

DensityMatrix state_from_json(const Json& j) {
    const Eigen::Index da = j.at("dim_a").get<Eigen::Index>();
    const Eigen::Index db = j.at("dim_b").get<Eigen::Index>();
    if (da < 1 || db < 1)
        throw ValidationError("state_from_json: dimensions must be positive");
    return make_density(matrix_from_json(j), Bipartition{da, db});
}

Json channel_to_json(const QubitChannel& chan) {
    Json kraus = Json::array();
    for (const Matrix& k : chan.kraus) kraus.push_back(matrix_to_json(k));
    return Json{{"kraus", kraus}};
}

QubitChannel channel_from_json(const Json& j) {
    std::vector<Matrix> kraus;
    for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
    return make_channel(kraus);
}

Json report_to_json(const MeasureReport& report) {
    Json j{{"measure", report.measure},
           {"value", report.value},
           {"method", report.method},
           {"restarts", report.restarts},
           {"evaluations", report.evaluations},
           {"gap", report.gap}};
    j["basis_a"] = report.bases.empty() ? Json(nullptr)
                                        : matrix_to_json(report.bases[0]);
    j["basis_b"] = report.bases.size() < 2 ? Json(nullptr)
                                           : matrix_to_json(report.bases[1]);
    j["warning"] = report.warning.empty() ? Json(nullptr) : Json(report.warning);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace noq
