//! Three-group reference datasets with F and p values frozen from
//! scipy.stats.f_oneway (scipy 1.15.3, numpy 2.2.6). Samples were drawn from
//! shifted/scaled normals, rounded to six decimals, and the statistics
//! computed on the rounded values, so the literals below are exactly the
//! analyzed data. Studentized-range survival values come from
//! scipy.stats.studentized_range.sf on the same pinned version.

pub const DATASETS: [[&[f64]; 3]; 10] = [
    [&D0_G0, &D0_G1, &D0_G2],
    [&D1_G0, &D1_G1, &D1_G2],
    [&D2_G0, &D2_G1, &D2_G2],
    [&D3_G0, &D3_G1, &D3_G2],
    [&D4_G0, &D4_G1, &D4_G2],
    [&D5_G0, &D5_G1, &D5_G2],
    [&D6_G0, &D6_G1, &D6_G2],
    [&D7_G0, &D7_G1, &D7_G2],
    [&D8_G0, &D8_G1, &D8_G2],
    [&D9_G0, &D9_G1, &D9_G2],
];

pub const EXPECTED_F: [f64; 10] = [
    2.6218036989395004,
    11.53841163774633,
    8.40651363444392,
    2.4313311428417332,
    4.032322216954708,
    0.06407760558684882,
    2.025693187081284,
    0.2371469180934753,
    0.579350463034259,
    6.838620637318317,
];

pub const EXPECTED_P: [f64; 10] = [
    0.07840781751645226,
    3.5918349666326036e-05,
    0.00045933736063285033,
    0.0938728033497051,
    0.021147535550191967,
    0.9379764309832758,
    0.1380772102906045,
    0.7893836431978921,
    0.5624087566413303,
    0.0017441171397276844,
];

/// (q, k, df, survival value) for the studentized range distribution.
pub const SF_CASES: [(f64, usize, usize, f64); 3] = [
    (3.4, 3, 87, 0.0476798887983223),
    (3.88, 3, 10, 0.049813905771076916),
    (3.96, 4, 20, 0.04987686470532138),
];

const D0_G0: [f64; 30] = [-0.998287, -1.409747, -0.59788, -0.52379, -0.919774, 0.005192, -0.743076, -1.079186, -0.290614, -0.534181, -0.47123, 0.160712, 0.716438, -0.766476, 0.067653, -0.206618, -0.510125, 0.343656, 0.474212, -0.093434, -1.020873, 0.25651, -0.604675, 0.101825, -0.604401, -0.765865, -1.16556, -1.229552, -0.506939, -0.959563];
const D0_G1: [f64; 30] = [-2.326377, 0.905178, 2.962256, -1.931953, -1.178853, -2.219828, 0.147229, 3.171174, 0.583079, 0.210024, -1.46481, 1.488026, 1.378706, -2.730427, 1.792229, -0.185699, 2.740219, 0.771615, 1.82987, 0.959412, -0.586738, -0.958909, -1.0831, 1.077599, 1.750325, 0.269489, -1.591448, -0.826219, 2.579919, 0.101736];
const D0_G2: [f64; 30] = [-2.12885, -0.715778, 0.678801, 1.660008, 1.445672, -0.354499, 0.575161, -1.085539, 1.898037, -0.598105, -0.385226, -2.020699, -1.542076, -0.041489, -0.390258, -1.248378, -1.359723, 0.237669, 1.423087, 0.246029, -0.410742, 0.411957, -0.405054, 0.704209, 1.999077, 1.301899, 0.460725, -0.713232, -2.106039, 0.647594];
const D1_G0: [f64; 30] = [1.162768, -0.896503, -2.47984, -2.567869, -1.647119, 1.209671, -2.395455, -0.290909, -1.265063, -1.996635, 2.661931, -4.975953, -2.9174, -3.58709, -0.520438, -1.934609, -0.168366, 1.120392, -3.752914, -0.888329, -2.752743, -1.413429, -2.473344, -1.05367, -0.184589, -2.324267, -2.16209, -4.33719, -0.13424, -0.306623];
const D1_G1: [f64; 30] = [2.188892, 1.438958, -0.610775, 0.165328, 1.188841, 0.645562, -1.195579, 0.669006, -4.373994, -0.563704, -0.981375, -1.615462, -2.86838, -1.618139, -2.002807, -1.474157, -1.107512, -1.226758, -4.193586, -2.703901, -0.381994, 0.066122, 2.541155, -1.066706, 0.553614, -2.29641, 0.547098, -0.645359, 2.387167, -1.982412];
const D1_G2: [f64; 30] = [-1.821271, 0.920327, 0.350395, -0.180494, -1.971229, 1.716279, -2.204949, -1.705427, 1.796907, -3.034349, -0.950658, 2.219967, 1.943302, -0.062622, 2.295348, 1.746324, 3.180714, 2.329801, 1.51622, -0.644897, 0.843525, 4.077301, 2.172794, 3.646605, -0.465871, 0.207381, 1.448371, -0.23339, 0.012961, 2.287752];
const D2_G0: [f64; 30] = [-2.488026, -0.738726, 0.566159, -0.892508, -0.444616, -0.521936, -0.333124, 1.055009, -1.539629, 2.274716, -1.094088, 0.246045, -1.068363, -1.037497, -1.808182, 0.171756, -0.428294, -1.329207, -0.286638, -0.697995, 1.111296, -3.892423, -1.251881, -1.556869, -2.971316, -1.927165, -1.628703, -0.77264, 1.423128, -0.823717];
const D2_G1: [f64; 30] = [1.196787, -1.687436, -1.931812, 0.40416, -0.849172, -1.98489, 0.151215, 1.620619, -0.121646, 1.42779, -0.062963, -0.56407, -2.994505, -0.00666, 0.438406, 1.170932, 1.711929, -1.418419, 0.981454, 1.834096, -0.161572, 1.468819, 0.988093, 2.559016, 2.029573, 2.464563, 0.244093, -0.43318, -0.251342, -1.259002];
const D2_G2: [f64; 30] = [2.299335, 0.232269, 0.466613, 0.390295, -0.138871, 0.376803, 1.697336, 0.334, 2.857837, 1.134391, 0.366542, -0.637537, 1.057511, 1.832292, 0.223933, -1.041462, 0.908753, -1.046778, 1.524903, -0.414553, 0.023324, 1.213841, -0.277712, -0.103122, 1.38968, -2.324845, 3.040971, 1.49356, 0.182407, -0.240334];
const D3_G0: [f64; 30] = [0.899219, 1.098653, 0.530256, -1.371402, 1.671599, 0.694046, 0.076199, 0.46416, 1.011204, 0.310227, 0.982019, 0.180051, 0.824937, 0.377082, 0.165855, 1.126098, 1.070785, 1.990612, 1.170491, 1.615018, 1.551312, 1.217201, -0.497633, 1.271578, 2.758685, -0.481084, 1.487311, 1.616667, 1.200045, 1.624911];
const D3_G1: [f64; 30] = [-1.635768, 0.69754, 1.12403, 1.386785, 0.860924, -0.403433, -0.064449, -0.451526, 2.611406, 0.798717, -1.003287, 1.039686, -0.044993, -1.585711, -0.356039, -0.066854, 0.372067, 0.33776, 0.035931, 0.751317, 0.831419, 0.219124, -0.484766, -0.386226, 1.852302, -0.282717, -1.384431, 0.098143, 0.576264, -0.453684];
const D3_G2: [f64; 30] = [1.758567, -0.128381, 0.126829, 1.144566, 0.815335, 1.542029, 2.958261, -3.074744, -1.111581, 1.77281, -2.705977, 2.93143, -0.722401, 1.680374, -1.93455, 0.988991, -0.168724, 1.562395, -0.108917, 0.106631, -1.373495, 1.791153, -0.875608, -0.300125, 1.623657, 0.740802, 0.743597, 3.612471, 3.779307, -2.69691];
const D4_G0: [f64; 30] = [-1.055049, -0.835414, -3.048671, 5.36472, -2.400289, 0.340415, 0.545969, 0.41665, -2.330557, -2.054867, -0.004244, 2.001784, -0.853713, -2.430769, -1.643037, -2.386928, 0.221927, -1.847619, -1.664154, -4.477146, 1.078594, 0.278185, 0.26885, -2.634488, -1.54897, -1.077107, -1.00867, -3.214045, 0.1778, -2.944082];
const D4_G1: [f64; 30] = [-3.111636, -0.0007, 0.150756, 2.184767, -1.032932, 2.060319, 1.472684, -3.279086, -0.87848, 0.204011, 1.749229, -0.17523, 0.845978, 2.662184, -0.559314, 1.434599, 2.527234, -1.637243, -1.467047, -0.254589, 0.381391, -2.369039, 0.687957, 0.569814, 1.892581, -0.664517, 0.46949, 0.649921, 0.68174, 2.477322];
const D4_G2: [f64; 30] = [0.926283, 1.801375, 0.837078, 3.383808, 0.980877, -1.421637, -1.550445, -1.506055, -2.945367, -0.766119, -3.277644, 0.372357, -1.083519, -0.551553, 2.311931, -0.119771, 1.702695, -0.006941, -1.630741, 1.635901, -0.799814, -1.613133, 0.828582, -0.881777, -2.35391, -0.183722, 0.732033, 0.485527, 2.482783, 0.061575];
const D5_G0: [f64; 30] = [-1.594636, 1.599585, 0.162681, -0.932608, -0.494289, -1.348893, 1.417775, -0.870545, -0.936393, 0.004514, -0.636918, 2.3286, -1.217073, -2.926081, -1.172044, -2.088344, -4.888114, 1.606879, -1.485351, 1.199722, 0.442254, -2.3071, -2.121506, -1.210366, -0.49181, 1.319561, -2.836015, -2.42209, 0.146699, 0.777212];
const D5_G1: [f64; 30] = [-0.687173, 0.832295, 0.095257, -1.209735, -0.983029, -0.348022, -0.644645, -0.484046, -0.056042, -1.487286, -0.750028, -0.460419, -0.922925, -0.457038, -1.014523, 0.04128, -0.728986, -0.31725, -0.896164, -0.233562, -1.384083, -2.006427, -0.451396, -0.508559, -2.289972, -1.797955, -1.151993, -0.227239, -1.945387, -1.004606];
const D5_G2: [f64; 30] = [-0.869739, -0.303711, -4.197184, 0.690532, 1.001894, 0.004303, -3.613088, -0.697562, 1.079459, -1.963874, -1.982745, -1.273363, 1.52114, -3.315356, -0.809482, 1.366905, -2.758643, -1.819994, 0.853202, -1.280837, 0.013872, -1.141776, 2.162576, 1.262446, -2.064329, -1.439797, 1.032996, -1.26591, -3.254401, -1.769097];
const D6_G0: [f64; 30] = [1.330092, 1.935961, 0.290004, -0.505189, 0.763163, 1.474326, -2.231569, 2.890871, 0.254384, 2.450653, -1.318714, 1.870633, -1.352549, 1.16029, 1.347156, 1.653364, 0.016102, 0.459578, 2.143589, -1.328377, -0.014811, 1.550339, -0.898922, 0.823167, 5.293571, -2.003174, -0.220564, -0.673345, 1.235758, 2.305697];
const D6_G1: [f64; 30] = [1.555943, -0.001286, 2.677404, 0.889356, 0.272454, 1.562379, 1.131109, 0.952855, 0.422653, 1.453493, 2.056857, 2.012943, 1.396567, 1.431655, 1.309027, 0.768705, 0.450014, 0.859882, 0.606926, 3.043124, 0.523853, 1.04368, 1.273451, 0.828052, 1.042001, 0.889222, 0.414187, 1.063703, -0.631276, 0.228139];
const D6_G2: [f64; 30] = [2.76144, -0.055301, 0.782503, 1.489535, -1.184571, 2.282274, 1.789634, -0.514322, 0.854026, -2.1717, 3.154039, -0.681487, 2.222101, -4.439061, -1.482957, -2.052854, -3.975361, 0.917414, 2.130832, -2.152651, -0.904748, 3.175217, 0.948812, 1.121849, 0.561932, 2.440356, 0.967495, 2.035334, -4.003975, 0.471426];
const D7_G0: [f64; 30] = [-0.698172, -2.193948, -3.12983, -1.635469, -1.284316, -1.59722, -2.049072, -1.121264, 2.208698, 1.423531, -0.780751, -0.781277, -3.360097, -1.504399, -0.225887, 0.105572, 2.609578, -2.881194, -0.320196, 1.343418, 1.167111, -1.985487, 2.002984, -0.154215, 1.901721, -1.349274, 1.210774, -2.308591, 3.743782, 1.382142];
const D7_G1: [f64; 30] = [1.746564, 0.969504, -0.628844, 2.258752, 0.448516, 0.387219, -1.320815, 1.553194, -0.268425, -1.17745, -1.807096, 0.685222, -0.315192, -1.081393, -0.637385, -2.608195, -0.225507, 1.601204, -1.810613, 0.196826, -1.798489, 0.002395, -3.89199, 0.848622, 0.503023, -1.88844, -1.040023, 1.178623, -0.468876, -1.698772];
const D7_G2: [f64; 30] = [-0.132802, -0.165948, 0.232252, 0.112844, -0.958201, -1.350566, -1.946929, -1.719239, 0.723378, -0.092207, -0.924622, 0.883451, -0.471494, -1.785305, 0.932407, -0.982356, -0.933514, -0.98295, 0.507399, 0.210655, -0.762236, -2.690195, -0.281966, 0.139151, -1.30861, -1.503356, 0.362472, -0.796005, -1.418451, 0.128527];
const D8_G0: [f64; 30] = [1.273563, -1.554463, -0.912962, 0.43285, -0.021444, -1.73646, -0.15962, -0.522112, -1.849384, -1.033016, 0.994351, 0.792007, 1.899115, 2.111045, 1.577931, 2.415321, -0.689874, 0.058719, -0.640023, 1.545381, -0.536325, 2.042189, -0.115733, 2.179511, 2.348618, 1.109267, -1.482208, -0.13461, 0.784285, -0.360815];
const D8_G1: [f64; 30] = [-0.284867, -1.757162, 0.481718, 0.048299, 0.804592, 2.050841, -1.661944, 1.33129, -1.159594, 1.806133, 0.537949, -0.063985, -0.667079, -2.558137, 0.089464, 1.206894, 1.55096, 0.806497, -2.060603, 1.345837, 0.252497, -1.782186, -0.241906, 0.542117, 1.118445, -0.431944, -1.44929, 2.992458, 1.494601, 2.56379];
const D8_G2: [f64; 30] = [-2.136443, -0.117889, 0.220863, -0.392098, 0.552424, -1.334541, 1.299915, 3.691161, 0.963582, 1.760217, -2.179155, -1.854143, 0.83301, -0.636711, 1.22191, 1.099517, -3.35983, 0.273398, -1.830437, -1.206578, -0.890321, 1.843479, -1.878494, 3.11138, 2.182231, -0.874032, -2.257661, -0.610827, 3.006349, -3.053441];
const D9_G0: [f64; 30] = [-0.599941, 0.822857, 0.389647, 0.861641, 0.025224, 1.022407, -0.112432, 0.321493, 0.192822, -0.770727, -1.269716, -0.197781, 0.07172, 1.093836, 1.070514, -0.501426, 0.540417, -0.351997, -0.239543, 0.354358, -0.240866, 0.73912, -0.559551, 0.903467, 0.647114, 0.52687, -0.0513, -0.606858, 0.20604, -0.720157];
const D9_G1: [f64; 30] = [-0.547487, -0.6971, -0.691698, -1.059869, -1.041174, -0.283855, -0.58979, -1.223902, -1.697378, -0.480832, -0.287032, -0.835449, -0.356935, -0.99535, -0.652569, -1.6677, -0.700216, -0.673975, -0.269387, -0.949278, -0.59801, -1.872005, 0.368993, -0.452516, -0.015618, -0.780431, -0.161924, -1.309801, -1.313714, -0.566773];
const D9_G2: [f64; 30] = [4.123984, 0.916192, -0.77933, 1.617443, -5.260054, -2.112696, -1.569186, 1.549488, 3.004289, 0.25581, -1.705605, 1.594925, -1.695827, -0.721311, -1.649351, -0.412572, -0.119976, 0.901382, 1.528103, 0.884958, 1.800656, 0.742876, 0.946119, -0.031448, -0.515397, 3.078482, -0.953861, 1.55626, 0.994106, 0.882723];
