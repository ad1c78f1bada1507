#pragma once

// Generated by tests/oracles/generate_frozen.py (mpmath + scipy). Do not edit.

namespace dfarm::oracle {

inline constexpr double kGammaP[][3] = {
    {0.1, 0.005000000000000001, 0.6185276709481867},
    {0.1, 0.05, 0.7755386354510305},
    {0.1, 0.1, 0.8275517595858506},
    {0.1, 0.16000000000000003, 0.8629130663874118},
    {0.1, 0.30000000000000004, 0.9083579897300343},
    {0.5, 0.025, 0.17693672624187853},
    {0.5, 0.25, 0.5204998778130465},
    {0.5, 0.5, 0.6826894921370859},
    {0.5, 0.8, 0.7940967892679317},
    {0.5, 1.5, 0.9167354833364496},
    {1.0, 0.05, 0.04877057549928599},
    {1.0, 0.5, 0.3934693402873666},
    {1.0, 1.0, 0.6321205588285577},
    {1.0, 1.6, 0.7981034820053446},
    {1.0, 3.0, 0.950212931632136},
    {2.5, 0.125, 0.0015208185533684398},
    {2.5, 1.25, 0.2235049288766773},
    {2.5, 2.5, 0.5841198130044921},
    {2.5, 4.0, 0.8437643724222776},
    {2.5, 7.5, 0.9896376620842136},
    {7.0, 0.35000000000000003, 9.405287952995834e-08},
    {7.0, 3.5, 0.06528809702895369},
    {7.0, 7.0, 0.5502889441513011},
    {7.0, 11.200000000000001, 0.9292395058880794},
    {7.0, 21.0, 0.9998763715367985},
    {15.0, 0.75, 5.063927867821361e-15},
    {15.0, 7.5, 0.010260427912342617},
    {15.0, 15.0, 0.5343462910559904},
    {15.0, 24.0, 0.9801746671765363},
    {15.0, 45.0, 0.9999999343267318},
    {40.0, 2.0, 1.9171583415942736e-37},
    {40.0, 20.0, 5.3202025112462175e-05},
    {40.0, 40.0, 0.5210288610610552},
    {40.0, 64.0, 0.9994723516250885},
    {40.0, 120.0, 1.0},
    {100.0, 5.0, 5.991878303535651e-91},
    {100.0, 50.0, 3.200065324585125e-10},
    {100.0, 100.0, 0.5132987982791487},
    {100.0, 160.0, 0.999999855797755},
    {100.0, 300.0, 1.0},
    {250.0, 12.5, 2.048407894511436e-224},
    {250.0, 125.0, 5.354943699258308e-23},
    {250.0, 250.0, 0.508410626968991},
    {250.0, 400.0, 0.9999999999999997},
    {250.0, 750.0, 1.0},
    {600.0, 30.0, 0.0},
    {600.0, 300.0, 1.5195681511850968e-52},
    {600.0, 600.0, 0.5054289668796126},
    {600.0, 960.0, 1.0},
    {600.0, 1800.0, 1.0},
};
inline constexpr double kBetaI[][4] = {
    {0.5, 0.5, 0.01, 0.06376856085851985},
    {0.5, 0.5, 0.2, 0.2951672353008666},
    {0.5, 0.5, 0.45, 0.4681157195707401},
    {0.5, 0.5, 0.7, 0.6309898804344546},
    {0.5, 0.5, 0.97, 0.8891753133955406},
    {1.0, 3.0, 0.01, 0.029701},
    {1.0, 3.0, 0.2, 0.48800000000000004},
    {1.0, 3.0, 0.45, 0.8336250000000001},
    {1.0, 3.0, 0.7, 0.973},
    {1.0, 3.0, 0.97, 0.999973},
    {2.0, 5.0, 0.01, 0.001460447605},
    {2.0, 5.0, 0.2, 0.34464},
    {2.0, 5.0, 0.45, 0.836432578125},
    {2.0, 5.0, 0.7, 0.989065},
    {2.0, 5.0, 0.97, 0.999999857845},
    {5.0, 2.0, 0.01, 5.95e-10},
    {5.0, 2.0, 0.2, 0.0016000000000000005},
    {5.0, 2.0, 0.45, 0.069198046875},
    {5.0, 2.0, 0.7, 0.4201749999999999},
    {5.0, 2.0, 0.97, 0.9875441295549999},
    {0.3, 7.0, 0.01, 0.4874920509337247},
    {0.3, 7.0, 0.2, 0.957131712138316},
    {0.3, 7.0, 0.45, 0.9979526414918876},
    {0.3, 7.0, 0.7, 0.999977150813352},
    {0.3, 7.0, 0.97, 0.9999999999981212},
    {10.0, 10.0, 0.01, 8.509104732905515e-16},
    {10.0, 10.0, 0.2, 0.0015791205491671046},
    {10.0, 10.0, 0.45, 0.3289640875783923},
    {10.0, 10.0, 0.7, 0.967446643118699},
    {10.0, 10.0, 0.97, 0.9999999999574594},
    {50.0, 20.0, 0.01, 3.8356868729845154e-84},
    {50.0, 20.0, 0.2, 8.269651429204155e-21},
    {50.0, 20.0, 0.45, 3.509083387061664e-06},
    {50.0, 20.0, 0.7, 0.38250924838123324},
    {50.0, 20.0, 0.97, 0.9999999999999902},
    {120.0, 300.0, 0.01, 2.0911877358871957e-134},
    {120.0, 300.0, 0.2, 1.4725636813171504e-05},
    {120.0, 300.0, 0.45, 0.9999999999978116},
    {120.0, 300.0, 0.7, 1.0},
    {120.0, 300.0, 0.97, 1.0},
    {3.5, 0.8, 0.01, 6.549389958262123e-08},
    {3.5, 0.8, 0.2, 0.002420486550746743},
    {3.5, 0.8, 0.45, 0.043643480168604656},
    {3.5, 0.8, 0.7, 0.2213971473209801},
    {3.5, 0.8, 0.97, 0.8326252135108528},
    {25.0, 1.5, 0.01, 5.698438201925293e-50},
    {25.0, 1.5, 0.2, 1.7267213138852762e-17},
    {25.0, 1.5, 0.45, 9.226360886128383e-09},
    {25.0, 1.5, 0.7, 0.00043873945234545266},
    {25.0, 1.5, 0.97, 0.6735222371672563},
};
inline constexpr double kStudentT[][3] = {
    {-3.2, 4.0, 0.01645040530046948},
    {0.5, 1.0, 0.6475836176504333},
    {1.96, 30.0, 0.9703288435519748},
    {2.7, 12.5, 0.9906367640200787},
    {-0.1, 200.0, 0.46022224625216046},
};
inline constexpr double kFisherF[][4] = {
    {2.0, 2.0, 12.0, 0.822021484375},
    {0.7, 5.0, 3.0, 0.33859652481698477},
    {4.5, 3.0, 40.0, 0.9917953705169346},
    {1.1, 10.0, 10.0, 0.5584169569539457},
};
inline constexpr double kChiSquared[][3] = {
    {0.5, 1.0, 0.5204998778130466},
    {3.0, 2.0, 0.7768698398515702},
    {11.07, 5.0, 0.9499903813775946},
    {40.0, 30.0, 0.8951357188920153},
};
inline constexpr double kNormalQuantile[][2] = {
    {1e-10, -6.361340902404056},
    {0.001, -3.090232306167813},
    {0.025, -1.9599639845400545},
    {0.3, -0.5244005127080409},
    {0.5, 0.0},
    {0.8, 0.8416212335729143},
    {0.975, 1.959963984540054},
    {0.999999, 4.753424308817087},
};
inline constexpr double kKolmogorovSf[][2] = {
    {0.3, 0.9999906941986655},
    {0.6, 0.8642827790506042},
    {0.9, 0.3927307079406543},
    {1.36, 0.049485876755377876},
    {2.0, 0.0006709252557796953},
};
inline constexpr double kStudentizedRange[][4] = {
    {3.5, 3.0, 12.0, 0.9300045147248164},
    {2.0, 4.0, 20.0, 0.4945596545878861},
    {4.2, 5.0, 30.0, 0.9572734617798626},
    {3.0, 3.0, 1000.0, 0.9139458084788669},
    {1.0, 2.0, 5.0, 0.48891591956971947},
};
inline constexpr double kSampleA[] = {2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 4.9, 3.7, 4.1, 2.2, 3.9};
inline constexpr double kSampleB[] = {3.9, 4.8, 5.1, 6.2, 4.4, 5.9, 6.8, 5.0, 4.6, 5.5, 6.1, 5.2};
inline constexpr double kSampleC[] = {1.2, 1.9, 2.5, 1.1, 3.0, 2.2, 1.7, 2.8, 2.0, 1.4, 9.5, 2.6};
inline constexpr double kShapiroA[] = {0.9677858607550697, 0.8862802708607276};
inline constexpr double kShapiroC[] = {0.594256255058966, 9.610328029505074e-05};
inline constexpr double kDagostinoK2[] = {992.8834630720548, 2.5008947070926576e-216};
inline constexpr double kDagostinoK2NearNormal[] = {0.019304207521168047, 0.9903943282838658};
inline constexpr double kStudentAB[] = {-4.304825676175116, 0.00028655026412277573};
inline constexpr double kWelchAB[] = {-4.304825676175116, 0.00033984644314037963};
inline constexpr double kPairedAB[] = {-4.451938482729628, 0.0009755648198335713};
inline constexpr double kMannWhitneyAC[] = {114.5, 0.015247178176857982};
inline constexpr double kWilcoxonAB[] = {0.0, 0.003857292829942526};
inline constexpr double kAnovaABC[] = {9.205373371909186, 0.0006654117399888815};
inline constexpr double kKruskalABC[] = {18.334245546254557, 0.00010441650792514943};
inline constexpr double kBrownForsytheABC[] = {0.38990847900828035, 0.6801969668604775};
inline constexpr double kWelchAnovaABC[] = {13.278967073376053, 20.018642134400263, 0.00021342839638568514};
inline constexpr double kTukeyPvaluesABC[] = {0.02120448625517879, 0.35995624074266563, 0.0005296459216720395};
inline constexpr double kDunnPvaluesABC[] = {0.03244866012328081, 0.2642956951291888, 6.296882805934536e-05};

}  // namespace dfarm::oracle
