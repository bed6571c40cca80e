#include "divalg/arith.hpp"
#include "divalg/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace divalg {

const char* error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnboundedPolyhedron: return "UnboundedPolyhedron";
    case ErrorCode::EmptyPolyhedron: return "EmptyPolyhedron";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::OracleRangeExceeded: return "OracleRangeExceeded";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::StructureUnavailable: return "StructureUnavailable";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NotCartier: return "NotCartier";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NoSections: return "NoSections";
    case ErrorCode::NotAmple: return "NotAmple";
    case ErrorCode::NotASubmodule: return "NotASubmodule";
    case ErrorCode::DegreeZeroKernel: return "DegreeZeroKernel";
    case ErrorCode::SpanFailure: return "SpanFailure";
    case ErrorCode::ExactnessFailure: return "ExactnessFailure";
    case ErrorCode::StepNotFG: return "StepNotFG";
    case ErrorCode::HypothesisFailure: return "HypothesisFailure";
    case ErrorCode::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

Integer floor_of(const Rational& q)
{
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    Integer quo, rem;
    boost::multiprecision::divide_qr(num, den, quo, rem);
    if (rem < 0)
        --quo;
    return quo;
}

Integer ceil_of(const Rational& q)
{
    return -floor_of(-q);
}

bool is_integral(const Rational& q)
{
    return boost::multiprecision::denominator(q) == 1;
}

std::string to_fraction_string(const Rational& q)
{
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational parse_rational(const std::string& text)
{
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos)
            return Rational(Integer(text));
        Integer den(text.substr(slash + 1));
        if (den == 0)
            throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
        return Rational(Integer(text.substr(0, slash)), den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + text + "'");
    }
}

Integer gcd_of(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, x);
    return abs(g);
}

bool is_zero(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_primitive(const IntVector& v)
{
    return gcd_of(v) == 1;
}

IntVector primitive(const IntVector& v)
{
    Integer g = gcd_of(v);
    if (g == 0)
        return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] / g;
    return out;
}

Integer dot(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "dot of vectors with different lengths");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Rational dot(const IntVector& a, const RatVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "dot of vectors with different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

IntVector add(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "add of vectors with different lengths");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

IntVector sub(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "sub of vectors with different lengths");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

IntVector scale(const IntVector& a, const Integer& k)
{
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * k;
    return out;
}

RatVector to_rational(const IntVector& v)
{
    return RatVector(v.begin(), v.end());
}

IntVector clear_denominators(const RatVector& v)
{
    Integer l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
    return primitive(out);
}

IntVector make_int_vector(const std::vector<long long>& coords)
{
    IntVector out;
    out.reserve(coords.size());
    for (long long c : coords)
        out.emplace_back(c);
    return out;
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

} // namespace divalg
