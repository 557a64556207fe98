//! Small reference databases.

/// The five-basket electronics/books example.
pub const DB5: &str = "\
mp3player usb-charger book-dct book-ths
mp3player usb-charger
usb-charger mp3player book-dct book-ths
usb-charger
book-dct book-ths
";

/// Expected frequent itemsets of [`DB5`] at an absolute support of 2,
/// canonically serialized.
pub const DB5_SIGMA2: &str = "\
book-dct : 3
book-ths : 3
mp3player : 3
usb-charger : 4
book-dct book-ths : 3
book-dct mp3player : 2
book-dct usb-charger : 2
book-ths mp3player : 2
book-ths usb-charger : 2
mp3player usb-charger : 3
book-dct book-ths mp3player : 2
book-dct book-ths usb-charger : 2
book-dct mp3player usb-charger : 2
book-ths mp3player usb-charger : 2
book-dct book-ths mp3player usb-charger : 2
";
