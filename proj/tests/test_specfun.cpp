#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polylab/error.hpp"
#include "polylab/specfun.hpp"

using namespace polylab;
namespace sf = polylab::specfun;
using sf::BesselKind;

namespace {

// 40-digit mpmath values; scaled I/K forms carry e^{-x}, e^{x}
struct Ref { double x, j0, j1, j2, y0, y1, i0e, i1e, k0e, k1e; };
const Ref kRef[] = {
    {1.0e-8, 0.999999999999999975, 5.0000000000000000421e-9, 1.2500000000000000419e-17, -11.800773877179530755, -63661977.236758193571, 0.999999990000000075, 4.9999999500000004171e-9, 18.536612444976901911, 100000000.99999990772},
    {0.001, 0.999999750000015625, 0.00049999993750000261457, 1.2499998958333366406e-7, -4.4714166113759232557, -636.62216723113941482, 0.99900074958351555937, 0.00049950031235422134737, 7.0307160023782514978, 1000.9967345590684316},
    {0.10000000000000001, 0.997501562066040032, 0.049937526036242000321, 0.001248958658799918984, -1.5342386513503668083, -6.4589510947020266377, 0.90710092578230109165, 0.045298446808809327277, 2.6823261022628943375, 10.890182683049696015},
    {0.5, 0.93846980724081290423, 0.24226845767487388638, 0.030604023458682641307, -0.44451873350670655715, -1.4714723926702430692, 0.64503527044915006811, 0.15642080318487169714, 1.52410938577390953, 2.7310097082117857054},
    {1.0, 0.76519768655796655145, 0.44005058574493351596, 0.11490348493190048047, 0.088256964215676957983, -0.78121282130028871655, 0.4657596075936404365, 0.20791041534970844887, 1.1444630798068950147, 1.6361534862632582465},
    {2.0, 0.22389077914123566805, 0.5767248077568733872, 0.35283402861563771915, 0.5103756726497451196, -0.10703243154093754689, 0.30850832255367103953, 0.21526928924893765916, 0.84156821507077141792, 1.0334768470686885732},
    {3.5, -0.38012773998726337738, 0.13737752736232718572, 0.4586291841943074835, 0.18902194392082650675, 0.41018841788751188287, 0.22280243801077916331, 0.18739997660304998737, 0.64902633768868842821, 0.73646754802891240647},
    {5.0, -0.17759677131433830435, -0.32757913759146522204, 0.046565116277752215532, -0.30851762524903378007, 0.1478631433912268448, 0.18354081260932835307, 0.16397226694454235693, 0.54780756431351898687, 0.60027385878831258294},
    {7.5, 0.26633965788037839687, 0.13524842757970550518, -0.23027341052579026215, 0.11731328614820863084, -0.2591285104861162518, 0.14831583007739550284, 0.13804121154855420249, 0.45052369910491568638, 0.47966893379102061554},
    {10.0, -0.2459357644513483352, 0.04347274616886143667, 0.25463031368512062253, 0.055671167283599391424, 0.24901542420695388392, 0.12783333716342860732, 0.12126268138445551872, 0.39163193443659866573, 0.41076657059578875113},
    {12.0, 0.047689310796833536624, -0.22344710449062761237, -0.084930494878604805352, -0.22523731263436143369, -0.05709921826089652105, 0.11642622121344044298, 0.11146429929018097642, 0.35819487848907821528, 0.372831753369709876},
    {14.9, 0.0063915448908529068301, 0.20687617180992505329, 0.021377068774908844627, 0.20654643470696920504, 0.00052827507642169752974, 0.10425387282429125373, 0.1006922988117705442, 0.32206082241985713473, 0.33269794640170975962},
    {15.1, -0.034561851455564956162, 0.20131022040849091795, 0.061225456807682959167, 0.20234322922865162415, 0.041273534009483568617, 0.10354878120576968607, 0.10005903226243464326, 0.31995425735222379651, 0.33038391959458639992},
    {17.0, -0.16985425215118354791, -0.097668492757780650236, 0.15836384123850347142, -0.092637198442323692527, 0.16720503607723368646, 0.097494300535103393011, 0.094581910679577763456, 0.30180801922750172078, 0.31056123412985661502},
    {20.0, 0.16702466434058315473, 0.066833124175850045579, -0.16034135192299815017, 0.062640596809383831162, -0.16551161436252129586, 0.089780311884826021596, 0.087506222183288665356, 0.27854487665718222393, 0.28542549694072644517},
    {25.0, 0.096266783275958116174, -0.12535024958028990465, -0.10629480324238130855, -0.12724943226800613783, -0.098829964783237410053, 0.080196773547436708422, 0.078576113319292772028, 0.24943660457559668687, 0.25437732954208525059},
    {30.0, -0.086367983581040211336, -0.11875106261662293652, 0.078451246073265348901, -0.11729573168666402525, 0.084425570661747234891, 0.073145946482237293929, 0.071916330598647554706, 0.22788666561625373042, 0.23165412937771180227},
    {45.0, 0.11581867067325632359, 0.028348854376424527534, -0.11455872158985967792, 0.027060469763313287711, -0.11552517964639944069, 0.059638115011731949075, 0.058971703136200643457, 0.18632040186076599933, 0.18837937438601918433},
    {60.0, -0.091471804089061869531, 0.046598383758166317869, 0.09302508354766741346, 0.047358952209449399203, 0.091869609369866895264, 0.051611549173609840949, 0.051179630189028718118, 0.16146817823629392565, 0.16280823094404427103},
    {100.0, 0.019985850304223122424, -0.077145352014112158033, -0.021528757344505365585, -0.077244313365083152254, -0.020372312002759793305, 0.039944379299096682648, 0.039744153025130252674, 0.12517562165912657889, 0.12579995047957852933},
    {250.0, -0.026053373425204233664, -0.043269038410330749511, 0.025707221117921587668, -0.043216845440366267701, 0.025966992185484582261, 0.025243969387054753633, 0.025193430757117305262, 0.079227001484703988536, 0.079385297663557711419},
    {500.0, -0.034100556880731998265, 0.010472613470372292844, 0.034142447334613487437, 0.0105067087398313741, 0.034111080629137135895, 0.017845706500153167237, 0.017827851852898056461, 0.056035915417234515428, 0.05609192337055556924},
    {700.0, -0.0062882724650687667615, 0.02948982408403033108, 0.0063725291053088534218, 0.029494308180893819487, 0.0063093414214525600221, 0.015081295651531357587, 0.015070519444716846949, 0.047362369454613572112, 0.047396187653494544137},
};

// oscillatory functions are compared relative to their local envelope
double envelope(double x, double v)
{
    const double env = x < 1.0 ? 1.0 : std::sqrt(2.0 / (std::numbers::pi * x));
    return std::max(std::fabs(v), env);
}

double j1_series_oracle(double x)
{
    long double term = x / 2.0L, sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -(long double)x * x / 4 / ((long double)k * (k + 1));
        sum += term;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("J and Y match high-precision references")
{
    for (const auto& r : kRef) {
        CAPTURE(r.x);
        CHECK(std::fabs(sf::j0(r.x) - r.j0) <= 1e-12 * envelope(r.x, r.j0));
        CHECK(std::fabs(sf::j1(r.x) - r.j1) <= 1e-12 * envelope(r.x, r.j1));
        CHECK(std::fabs(sf::j2(r.x) - r.j2) <= 1e-12 * envelope(r.x, r.j2));
        CHECK(std::fabs(sf::y0(r.x) - r.y0) <= 1e-12 * envelope(r.x, r.y0));
        CHECK(std::fabs(sf::y1(r.x) - r.y1) <= 1e-12 * envelope(r.x, r.y1));
    }
}

TEST_CASE("scaled I and K match high-precision references")
{
    for (const auto& r : kRef) {
        CAPTURE(r.x);
        CHECK(std::fabs(sf::i0e(r.x) / r.i0e - 1) < 1e-12);
        CHECK(std::fabs(sf::i1e(r.x) / r.i1e - 1) < 1e-12);
        CHECK(std::fabs(sf::k0e(r.x) / r.k0e - 1) < 1e-12);
        CHECK(std::fabs(sf::k1e(r.x) / r.k1e - 1) < 1e-12);
    }
}

TEST_CASE("unscaled I and K at x=2")
{
    CHECK(std::fabs(sf::i0(2.0) / 2.2795853023360672674 - 1) < 1e-13);
    CHECK(std::fabs(sf::i1(2.0) / 1.5906368546373290634 - 1) < 1e-13);
    CHECK(std::fabs(sf::k0(2.0) / 0.11389387274953343565 - 1) < 1e-13);
    CHECK(std::fabs(sf::k1(2.0) / 0.13986588181652242728 - 1) < 1e-13);
}

TEST_CASE("J1 vanishes at its first zero")
{
    CHECK(std::fabs(sf::bessel_eval(BesselKind::J1, 3.8317059702075125)) < 1e-10);
}

TEST_CASE("I1(pi x)/x tends to pi/2")
{
    const double x = 0.001;
    CHECK(std::fabs(sf::i1(std::numbers::pi * x) / x - std::numbers::pi / 2) < 1e-5);
}

TEST_CASE("Wronskian I1 K0 + I0 K1 = 1/x")
{
    CHECK(std::fabs(sf::i1(2.0) * sf::k0(2.0) + sf::i0(2.0) * sf::k1(2.0) - 0.5) < 1e-12);
    for (double x = 0.1; x <= 20.0; x += 0.37) {
        CAPTURE(x);
        const double w = sf::i1e(x) * sf::k0e(x) + sf::i0e(x) * sf::k1e(x);
        CHECK(std::fabs(w * x - 1.0) < 1e-11);
    }
}

TEST_CASE("domain and overflow signals")
{
    CHECK_THROWS_AS(sf::y1(0.0), Error);
    CHECK_THROWS_AS(sf::k1(-1.0), Error);
    try {
        sf::i1(800.0);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Overflow);
    }
    CHECK(sf::k1(800.0) == 0.0);
    CHECK(std::isfinite(sf::i1e(800.0)));
    CHECK(std::isfinite(sf::k1e(800.0)));
}

TEST_CASE("ratio helpers stay finite where the factors overflow")
{
    const double r = sf::k1_ratio(1500.0, 1000.0);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
    CHECK(std::fabs(sf::k1_ratio(2.0, 1.0) - sf::k1(2.0) / sf::k1(1.0)) < 1e-14);
    CHECK(std::fabs(sf::i1_ratio(1.0, 2.0) - sf::i1(1.0) / sf::i1(2.0)) < 1e-14);
    CHECK(std::isfinite(sf::i1_ratio(900.0, 1000.0)));
}

TEST_CASE("j1_basis zeros and normalizers")
{
    const auto b = sf::j1_basis(50);
    REQUIRE(b.size() == 50);
    CHECK(std::fabs(b.zeros[0] - 3.8317059702075123156) < 1e-13);
    CHECK(std::fabs(b.zeros[1] - 7.0155866698156187535) < 1e-13);
    CHECK(std::fabs(b.zeros[2] - 10.173468135062722077) < 1e-13);
    CHECK(std::fabs(b.zeros[9] - 32.189679910974403627) < 1e-12);
    CHECK(std::fabs(b.zeros[49] - 157.86265540193029781) < 1e-11);
    CHECK(std::fabs(b.normalizers[0] - 0.081107565413342822744) < 1e-14);
    CHECK(std::fabs(b.normalizers[0] - 0.0811076) < 1e-6);
    for (int n = 0; n < 50; ++n) {
        CAPTURE(n);
        CHECK(std::fabs(sf::j1(b.zeros[n])) < 1e-12);
        CHECK(b.normalizers[n] > 0.0);
        const double lam = b.zeros[n];
        CHECK(std::fabs(b.normalizers[n] + 0.5 * sf::j0(lam) * sf::j2(lam)) < 1e-12);
        if (n > 0) CHECK(b.zeros[n] > b.zeros[n - 1]);
    }
    CHECK(std::fabs(b.zeros[49] - b.zeros[48] - std::numbers::pi) < 1e-3);
    CHECK(sf::j1_basis(0).size() == 0);
}

TEST_CASE("first two zeros agree with bisection on the J1 power series")
{
    auto bisect = [](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (lo + hi);
            if ((j1_series_oracle(lo) < 0) == (j1_series_oracle(m) < 0))
                lo = m;
            else
                hi = m;
        }
        return 0.5 * (lo + hi);
    };
    const auto b = sf::j1_basis(2);
    CHECK(std::fabs(b.zeros[0] - bisect(3.5, 4.0)) < 1e-8);
    CHECK(std::fabs(b.zeros[1] - bisect(6.5, 7.5)) < 1e-8);
    CHECK(std::fabs(b.zeros[0] - 3.8317059702) < 1e-8);
    CHECK(std::fabs(b.zeros[1] - 7.0155866698) < 1e-8);
}

TEST_CASE("parity for negative arguments")
{
    CHECK(sf::j1(-2.0) == -sf::j1(2.0));
    CHECK(sf::j0(-2.0) == sf::j0(2.0));
    CHECK(sf::i1(-1.5) == -sf::i1(1.5));
}
