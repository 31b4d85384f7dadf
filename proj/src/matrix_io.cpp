#include "monoplus/matrix.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace monoplus {

InstanceMeta make_meta(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows || A.rows != B.cols)
        throw std::invalid_argument("make_meta: A must be n x m and B m x n");
    InstanceMeta meta;
    meta.n = A.rows;
    meta.m = A.cols;
    ExtInt maxb = 0;
    for (ExtInt x : B.v)
        if (!is_inf(x) && x > maxb) maxb = x;
    meta.value_bound = maxb;
    double logn = meta.n > 1 ? std::log(static_cast<double>(meta.n)) : 1.0;
    meta.beta = meta.n > 1 ? std::log(static_cast<double>(meta.m)) / logn : 1.0;
    meta.mu = (meta.n > 1 && maxb > 0)
                  ? std::log(static_cast<double>(maxb)) / logn
                  : 0.0;
    return meta;
}

IntMatrix read_matrix(std::istream& in) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 1 || cols < 1)
        throw MatrixParseError("matrix header: expected positive 'rows cols'");
    IntMatrix M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            std::string tok;
            if (!(in >> tok))
                throw MatrixParseError("matrix body: unexpected end of input at row " +
                                       std::to_string(i));
            if (tok == "inf") {
                M.at(i, j) = kInf;
            } else {
                std::size_t pos = 0;
                std::int64_t val = 0;
                try {
                    val = std::stoll(tok, &pos);
                } catch (const std::exception&) {
                    pos = 0;
                }
                if (pos != tok.size())
                    throw MatrixParseError("matrix body: bad token '" + tok + "'");
                if (val == kInf)
                    throw MatrixParseError("matrix body: value collides with the inf sentinel");
                M.at(i, j) = val;
            }
        }
    }
    return M;
}

IntMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixParseError("cannot open '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const IntMatrix& M) {
    out << M.rows << ' ' << M.cols << '\n';
    for (int i = 0; i < M.rows; ++i) {
        for (int j = 0; j < M.cols; ++j) {
            if (j) out << ' ';
            ExtInt x = M.at(i, j);
            if (is_inf(x))
                out << "inf";
            else
                out << x;
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const IntMatrix& M) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_matrix(out, M);
}

}  // namespace monoplus
