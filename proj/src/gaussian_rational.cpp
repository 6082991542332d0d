#include "kappa/gaussian_rational.hpp"

#include <stdexcept>

namespace kappa {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::from_fraction(long num, long den, long im_num, long im_den)
{
    if (den == 0 || im_den == 0)
        throw std::domain_error("zero denominator");
    return {mpq_class(num, den), mpq_class(im_num, im_den)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string GaussianRational::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    if (sgn(re_) != 0)
        out = re_.get_str();
    if (sgn(im_) != 0) {
        if (!out.empty() && sgn(im_) > 0)
            out += "+";
        out += im_.get_str() + " i";
    }
    return out;
}

namespace {

mpq_class parse_rational(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0)
        throw std::invalid_argument("malformed rational '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace

GaussianRational GaussianRational::parse(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s += c;
    if (s.empty())
        throw std::invalid_argument("empty coefficient");
    if (s.back() != 'i')
        return {parse_rational(s), 0};
    s.pop_back();
    // split at the last sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos)
        return {0, parse_rational(s)};
    std::string re = s.substr(0, split);
    std::string im = s.substr(s[split] == '+' ? split + 1 : split);
    return {parse_rational(re), parse_rational(im)};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z)
{
    return os << z.to_string();
}

}  // namespace kappa
