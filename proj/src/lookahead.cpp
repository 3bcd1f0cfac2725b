/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/density.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/lookahead.hpp>

#include <algorithm>

using namespace ramsey;

auto ramsey::to_string(ConstantsMode mode) -> std::string
{
    return mode == ConstantsMode::asymptotic ? "asymptotic" : "practical";
}

namespace
{
    auto ceil_int(const Rational & x) -> BigInt
    {
        BigInt q = numerator(x) / denominator(x);
        if (Rational(q) < x)
            ++q;
        return q;
    }

    auto power(const Rational & base, int e) -> Rational
    {
        Rational result = 1;
        for (int i = 0 ; i < e ; ++i)
            result *= base;
        return result;
    }

    inline constexpr long long max_h1_bits = 1 << 20;

    auto asymptotic_h0(int D, const Rational & mu) -> BigInt
    {
        return ceil_int(Rational(16) * power(Rational(D), 5) / (mu * mu * mu));
    }

    auto asymptotic_ell1(int D, const BigInt & h0, const Rational & mu) -> BigInt
    {
        return ceil_int(Rational(D * D) * Rational(h0 * h0) / mu) + 20;
    }

    auto asymptotic_h1(int Delta, const BigInt & ell1) -> BigInt
    {
        if (Delta <= 1)
            return 2;
        double bits = ell1.convert_to<double>() * std::log2(double(Delta));
        if (bits > double(max_h1_bits))
            throw Error(ErrorKind::instance_too_large, "2 Delta^l1 needs about " + std::to_string(bits) + " bits");
        BigInt h1 = 2;
        auto e = ell1.convert_to<long long>();
        BigInt base = Delta;
        while (e > 0) {
            if (e & 1)
                h1 *= base;
            base *= base;
            e >>= 1;
        }
        return h1;
    }
}

auto ramsey::asymptotic_constants(int D, int Delta, int r, const Rational & mu, const Rational & K, const Rational & K0) -> ConstantsPack
{
    if (D < 1 || Delta < D || r < 1 || mu <= 0 || K <= 0 || K0 <= 0)
        throw Error(ErrorKind::invalid_input, "asymptotic constants need D >= 1, Delta >= D, r >= 1 and positive mu, K, K0");
    ConstantsPack cp;
    cp.mode = ConstantsMode::asymptotic;
    cp.D = D;
    cp.Delta = Delta;
    cp.r = r;
    cp.mu = mu;
    cp.d = Rational(1, 2 * r);
    cp.h0 = asymptotic_h0(D, mu);
    cp.ell1 = asymptotic_ell1(D, cp.h0, mu);
    cp.h1 = asymptotic_h1(Delta, cp.ell1);
    cp.K = K;
    Rational dD = power(cp.d, D);
    cp.kappa = dD / (Rational(20) * Rational(cp.h1) * K);
    cp.rho = dD / (Rational(4) * K0);
    return cp;
}

auto ramsey::validate_constants(const ConstantsPack & cp, const Rational & K0) -> void
{
    auto fail = [] (const std::string & what) { throw Error(ErrorKind::invalid_input, what); };
    if (cp.D < 1 || cp.Delta < cp.D || cp.r < 1)
        fail("need D >= 1, Delta >= D and r >= 1");
    if (cp.mu <= 0)
        fail("mu must be positive");
    if (cp.mode == ConstantsMode::practical) {
        if (cp.h1 < cp.Delta + 1)
            fail("h1 must be at least Delta + 1");
        for (auto & [name, value] : { std::pair{ "d", cp.d }, std::pair{ "kappa", cp.kappa }, std::pair{ "rho", cp.rho } })
            if (value <= 0 || value >= 1)
                fail(std::string(name) + " must lie strictly between 0 and 1");
        if (cp.ell1 < 1 || cp.h0 < 1 || cp.K <= 0)
            fail("l1, h0 and K must be positive");
        if (cp.grow_attempts < 1)
            fail("grow_attempts must be at least 1");
        if (cp.hsz_distance < 0 || cp.k0 < 1 || cp.eps <= 0 || cp.eps >= 1)
            fail("need a nonnegative class distance, k0 >= 1 and 0 < eps < 1");
        return;
    }

    if (cp.d != Rational(1, 2 * cp.r))
        fail("d must equal 1/(2r)");
    if (cp.h0 != asymptotic_h0(cp.D, cp.mu))
        fail("h0 must equal 16 D^5 / mu^3");
    if (cp.ell1 != asymptotic_ell1(cp.D, cp.h0, cp.mu))
        fail("l1 must equal D^2 h0^2 / mu + 20");
    if (cp.h1 != asymptotic_h1(cp.Delta, cp.ell1))
        fail("h1 must equal 2 Delta^l1");
    Rational dD = power(cp.d, cp.D);
    if (cp.kappa != dD / (Rational(20) * Rational(cp.h1) * cp.K))
        fail("kappa must equal d^D / (20 h1 K)");
    if (K0 > 0 && cp.rho != dD / (Rational(4) * K0))
        fail("rho must equal d^D / (4 K0)");
}

auto ramsey::small_int(const BigInt & x, const std::string & what) -> int
{
    if (x > 1000000000 || x < -1000000000)
        throw Error(ErrorKind::instance_too_large, what + " is too large to run");
    return x.convert_to<int>();
}

namespace
{
    auto rational_json(const Rational & x) -> nlohmann::json
    {
        return to_string(x);
    }

    auto read_rational(const nlohmann::json & j) -> Rational
    {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long long>());
        if (j.is_number())
            return parse_rational(j.dump());
        throw Error(ErrorKind::invalid_input, "expected a rational, got " + j.dump());
    }

    auto read_bigint(const nlohmann::json & j) -> BigInt
    {
        if (j.is_number_integer())
            return BigInt(j.get<long long>());
        if (j.is_string())
            return BigInt(j.get<std::string>());
        throw Error(ErrorKind::invalid_input, "expected an integer, got " + j.dump());
    }
}

auto ramsey::constants_to_json(const ConstantsPack & cp) -> nlohmann::json
{
    return nlohmann::json{
        { "mode", to_string(cp.mode) },
        { "D", cp.D }, { "Delta", cp.Delta }, { "r", cp.r },
        { "mu", rational_json(cp.mu) }, { "d", rational_json(cp.d) },
        { "h0", cp.h0.str() }, { "ell1", cp.ell1.str() }, { "h1", cp.h1.str() },
        { "kappa", rational_json(cp.kappa) }, { "rho", rational_json(cp.rho) }, { "K", rational_json(cp.K) },
        { "hsz_distance", cp.hsz_distance }, { "k0", cp.k0 }, { "eps", rational_json(cp.eps) },
        { "tie_tolerance", rational_json(cp.tie_tolerance) }, { "fine_density_floor", rational_json(cp.fine_density_floor) },
        { "trim_fraction", rational_json(cp.trim_fraction) }, { "keep_half", cp.keep_half },
        { "srl_samples", cp.srl_samples }, { "srl_iterations", cp.srl_iterations },
        { "lookahead_growth", cp.lookahead_growth }, { "count_budget", cp.count_budget }, { "grow_attempts", cp.grow_attempts }, { "audit", cp.audit }
    };
}

auto ramsey::constants_from_json(const nlohmann::json & j) -> ConstantsPack
{
    if (! j.is_object())
        throw Error(ErrorKind::invalid_input, "constants must be a JSON object");
    ConstantsPack cp;
    for (auto & [key, value] : j.items()) {
        if (key == "mode") {
            auto m = value.get<std::string>();
            if (m == "asymptotic")
                cp.mode = ConstantsMode::asymptotic;
            else if (m == "practical")
                cp.mode = ConstantsMode::practical;
            else
                throw Error(ErrorKind::invalid_input, "unknown constants mode '" + m + "'");
        }
        else if (key == "D") cp.D = value.get<int>();
        else if (key == "Delta") cp.Delta = value.get<int>();
        else if (key == "r") cp.r = value.get<int>();
        else if (key == "mu") cp.mu = read_rational(value);
        else if (key == "d") cp.d = read_rational(value);
        else if (key == "h0") cp.h0 = read_bigint(value);
        else if (key == "ell1") cp.ell1 = read_bigint(value);
        else if (key == "h1") cp.h1 = read_bigint(value);
        else if (key == "kappa") cp.kappa = read_rational(value);
        else if (key == "rho") cp.rho = read_rational(value);
        else if (key == "K") cp.K = read_rational(value);
        else if (key == "hsz_distance") cp.hsz_distance = value.get<int>();
        else if (key == "k0") cp.k0 = value.get<int>();
        else if (key == "eps") cp.eps = read_rational(value);
        else if (key == "tie_tolerance") cp.tie_tolerance = read_rational(value);
        else if (key == "fine_density_floor") cp.fine_density_floor = read_rational(value);
        else if (key == "trim_fraction") cp.trim_fraction = read_rational(value);
        else if (key == "keep_half") cp.keep_half = value.get<bool>();
        else if (key == "srl_samples") cp.srl_samples = value.get<int>();
        else if (key == "srl_iterations") cp.srl_iterations = value.get<int>();
        else if (key == "lookahead_growth") cp.lookahead_growth = value.get<int>();
        else if (key == "count_budget") cp.count_budget = value.get<long long>();
        else if (key == "grow_attempts") cp.grow_attempts = value.get<int>();
        else if (key == "audit") cp.audit = value.get<bool>();
        else
            throw Error(ErrorKind::invalid_input, "unknown constants field '" + key + "'");
    }
    validate_constants(cp);
    return cp;
}

namespace
{
    auto require_natural(const OrderedGraph & og) -> void
    {
        for (int i = 0 ; i < og.size() ; ++i)
            if (og.order()[i] != i)
                throw Error(ErrorKind::invalid_input, "lookahead construction needs the natural order");
    }

    // fills h1, boundary and h0 for the given left distances, growing the radius while roots touch the boundary
    auto assemble(const OrderedGraph & og, const std::vector<int> & dist, LookaheadContext & ctx, const ConstantsPack & cp) -> void
    {
        int base = small_int(cp.ell1, "l1");
        for (int radius = base ; radius <= base + std::max(0, cp.lookahead_growth) ; ++radius) {
            ctx.radius = radius;
            ctx.h1.clear();
            ctx.boundary.clear();
            for (int x = 0 ; x < og.size() ; ++x)
                if (dist[x] >= 0 && dist[x] <= radius) {
                    ctx.h1.push_back(x);
                    if (dist[x] == radius)
                        ctx.boundary.push_back(x);
                }
            ctx.h0.clear();
            ctx.findroots_trajectory.clear();
            if (ctx.h1.empty())
                return;

            auto [sub, map] = induced_ordered(og, ctx.h1);
            VertexSet local_t;
            for (auto v : ctx.decisive)
                local_t.push_back(map.from_parent[v]);
            auto roots = findroots(sub, {}, local_t, cp.D, cp.mu);
            for (auto v : roots.roots)
                ctx.h0.push_back(map.to_parent[v]);
            std::sort(ctx.h0.begin(), ctx.h0.end());
            ctx.findroots_trajectory = roots.trajectory_sizes;

            bool touches = std::any_of(ctx.h0.begin(), ctx.h0.end(),
                    [&] (Vertex v) { return std::binary_search(ctx.boundary.begin(), ctx.boundary.end(), v); });
            if (! touches)
                return;
        }
    }
}

auto ramsey::build_lookahead(const OrderedGraph & og, Vertex y, const ConstantsPack & cp) -> LookaheadContext
{
    require_natural(og);
    if (y < 0 || y >= og.size())
        throw Error(ErrorKind::invalid_input, "target vertex out of range");
    LookaheadContext ctx;
    ctx.targets = { y };
    ctx.decisive = og.left_neighbours(y);
    std::sort(ctx.decisive.begin(), ctx.decisive.end());

    auto ld = left_distances_from(og, y);
    std::vector<int> dist(og.size(), -1);
    for (int x = 0 ; x < y ; ++x)
        if (ld[x].is_finite())
            dist[x] = ld[x].value();
    assemble(og, dist, ctx, cp);
    verify_lookahead(og, ctx, cp);
    return ctx;
}

auto ramsey::build_segment_lookahead(const OrderedGraph & og, const VertexSet & q, const ConstantsPack & cp) -> LookaheadContext
{
    require_natural(og);
    if (q.empty())
        throw Error(ErrorKind::invalid_input, "segment must be nonempty");
    int n = og.size();
    VertexSet sorted_q = q;
    std::sort(sorted_q.begin(), sorted_q.end());
    if (sorted_q.front() != n - static_cast<int>(q.size()) || sorted_q.back() != n - 1
            || std::adjacent_find(sorted_q.begin(), sorted_q.end()) != sorted_q.end())
        throw Error(ErrorKind::invalid_input, "segment must be a final segment of the order");
    classify_segment(og.graph(), q);

    LookaheadContext ctx;
    ctx.targets = q;
    ctx.segment = true;
    std::vector<char> in_q(n, 0);
    for (auto v : q)
        in_q[v] = 1;
    for (auto v : q)
        for (auto w : og.graph().neighbours(v))
            if (! in_q[w])
                ctx.decisive.push_back(w);
    std::sort(ctx.decisive.begin(), ctx.decisive.end());
    ctx.decisive.erase(std::unique(ctx.decisive.begin(), ctx.decisive.end()), ctx.decisive.end());

    std::vector<int> dist(n, -1);
    for (auto y : q) {
        auto ld = left_distances_from(og, y);
        for (int x = 0 ; x < n ; ++x)
            if (! in_q[x] && ld[x].is_finite() && (dist[x] == -1 || ld[x].value() < dist[x]))
                dist[x] = ld[x].value();
    }
    assemble(og, dist, ctx, cp);
    verify_lookahead(og, ctx, cp);
    return ctx;
}

auto ramsey::verify_lookahead(const OrderedGraph & og, const LookaheadContext & ctx, const ConstantsPack & cp) -> void
{
    auto fail = [&] (const std::string & what) {
        throw Error(ErrorKind::invariant_violated, "lookahead for vertex " + std::to_string(ctx.targets.front()) + ": " + what);
    };
    for (auto v : ctx.decisive)
        if (! std::binary_search(ctx.h0.begin(), ctx.h0.end(), v))
            fail("roots miss a neighbour of the target");
    for (auto v : ctx.h0)
        if (std::binary_search(ctx.boundary.begin(), ctx.boundary.end(), v))
            fail("roots meet the boundary");

    auto h0_size = static_cast<long long>(ctx.h0.size()) + (ctx.segment ? 0 : 1);
    if (BigInt(h0_size) > cp.h0)
        fail("roots exceed h0");

    VertexSet with_targets = ctx.h0;
    with_targets.insert(with_targets.end(), ctx.targets.begin(), ctx.targets.end());
    std::sort(with_targets.begin(), with_targets.end());
    if (! is_connected(induced(og.graph(), with_targets).graph))
        fail("roots and target are disconnected");

    if (ctx.h1.size() > ctx.h0.size()) {
        auto sub = induced(og.graph(), ctx.h1);
        VertexSet local;
        for (auto v : ctx.h0)
            local.push_back(sub.from_parent[v]);
        bool ok = ctx.h1.size() <= static_cast<std::size_t>(default_spencer_limit)
            ? is_D_mu_spencer(RootedPattern{ sub.graph, local }, cp.D, cp.mu).holds
            : ! rooted_density_exceeds(sub.graph, local, Rational(cp.D) + cp.mu);
        if (! ok)
            fail("Spencer bound fails");
    }
}
