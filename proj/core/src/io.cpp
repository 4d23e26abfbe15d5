#include "reflab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace reflab {

const char* name_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::DegreeZero: return "DegreeZero";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::ScheduleTooShort: return "ScheduleTooShort";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::NoExactCoordinates: return "NoExactCoordinates";
        case ErrorCode::NotIndependentBasis: return "NotIndependentBasis";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::NotPV: return "NotPV";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NotUnit: return "NotUnit";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::BadInput: return "BadInput";
        case ErrorCode::NoRealDominantRoot: return "NoRealDominantRoot";
        case ErrorCode::BoundaryIndeterminate: return "BoundaryIndeterminate";
        case ErrorCode::BoundaryAmbiguous: return "BoundaryAmbiguous";
        case ErrorCode::ZeroHit: return "ZeroHit";
        case ErrorCode::ZeroOnCycle: return "ZeroOnCycle";
        case ErrorCode::RootFindFailed: return "RootFindFailed";
        case ErrorCode::OrbitTooLong: return "OrbitTooLong";
        case ErrorCode::NoWitness: return "NoWitness";
        case ErrorCode::SelfSimilarityMismatch: return "SelfSimilarityMismatch";
        case ErrorCode::TranslationOutsideXi: return "TranslationOutsideXi";
    }
    return "Unknown";
}

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::BadInput, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::BadInput, "cannot write " + path);
    out << text;
    if (!out.good()) fail(ErrorCode::BadInput, "write failed for " + path);
}

} // namespace reflab
