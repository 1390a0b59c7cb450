# Jobs de experimento do cohcat
